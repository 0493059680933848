"""Tests for region membership evaluation."""

import numpy as np
import pytest

from app.core.errors import InputError
from app.core.rng import SeedSpec
from app.features.datasets.schemas import ConstantModel, Dataset, HyperParams
from app.features.discrepancy.repository import GramRepository
from app.features.mixtures.schemas import GeneratorSpec, MixtureModel
from app.features.mixtures.service import generate_dataset
from app.features.regions.schemas import ALGORITHMS, AlgorithmConfig
from app.features.regions.service import RegionService, evaluate_membership

TRUE_MODEL = MixtureModel(p=0.5, lam=1.0)


@pytest.fixture
def dataset() -> Dataset:
    """Sixty points from the symmetric Laplace mixture."""
    return generate_dataset(
        GeneratorSpec(model=TRUE_MODEL, n=60), np.random.default_rng(41)
    )


def _config(algorithm: str) -> AlgorithmConfig:
    return AlgorithmConfig(algorithm=algorithm, mc_points=200)  # type: ignore[arg-type]


class TestRegionService:
    """Test RegionService."""

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_rank_in_range(self, dataset: Dataset, algorithm: str) -> None:
        """Test that every algorithm returns a rank in [1, m]."""
        service = RegionService(_config(algorithm), dataset)
        outcome = service.rank(
            TRUE_MODEL, HyperParams(m=6, q=5), SeedSpec(master_seed=1)
        )
        assert 1 <= outcome.rank <= 6
        assert outcome.included == (outcome.rank <= 5)
        assert outcome.z.shape == (6,)

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_deterministic(self, dataset: Dataset, algorithm: str) -> None:
        """Test that the same seed and candidate index give the same statistics."""
        service = RegionService(_config(algorithm), dataset)
        hp = HyperParams(m=5, q=4)
        first = service.rank(TRUE_MODEL, hp, SeedSpec(master_seed=2), theta_index=3)
        second = service.rank(TRUE_MODEL, hp, SeedSpec(master_seed=2), theta_index=3)
        np.testing.assert_array_equal(first.z, second.z)
        assert first.rank == second.rank

    def test_alg1_needs_three_samples(self, dataset: Dataset) -> None:
        """Test that m = 2 is rejected for Algorithm I."""
        service = RegionService(_config("alg1-knn"), dataset)
        with pytest.raises(InputError):
            service.rank(TRUE_MODEL, HyperParams(m=2, q=1), SeedSpec(master_seed=3))

    def test_inferred_box_flagged(self, dataset: Dataset) -> None:
        """Test that Algorithm I without a box reports the inference."""
        assert RegionService(_config("alg1-knn"), dataset).domain_box_inferred
        boxed = AlgorithmConfig(algorithm="alg1-knn", domain_box=[(-10.0, 10.0)])
        assert not RegionService(boxed, dataset).domain_box_inferred
        assert not RegionService(_config("alg3"), dataset).domain_box_inferred

    def test_gram_shared_across_services(self, dataset: Dataset) -> None:
        """Test that services on one dataset reuse a shared Gram matrix."""
        grams = GramRepository()
        first = RegionService(_config("alg3"), dataset, grams)
        second = RegionService(_config("alg3"), dataset, grams)
        assert first.gram is second.gram
        assert grams.computed == 1

    def test_clearly_false_candidate_excluded(self, dataset: Dataset) -> None:
        """Test that a constant +1 candidate is pushed to rank m by Algorithm III."""
        service = RegionService(_config("alg3"), dataset)
        outcome = service.rank(
            ConstantModel(value=1.0), HyperParams(m=10, q=9), SeedSpec(master_seed=4)
        )
        assert outcome.rank == 10
        assert outcome.included is False


class TestEvaluateMembership:
    """Test evaluate_membership."""

    def test_q_equal_m_always_included(self, dataset: Dataset) -> None:
        """Test that q = m includes every candidate."""
        for seed in range(5):
            verdict = evaluate_membership(
                dataset,
                ConstantModel(value=-1.0),
                _config("alg2"),
                HyperParams(m=4, q=4),
                SeedSpec(master_seed=seed),
            )
            assert verdict.included

    def test_verdict_fields(self, dataset: Dataset) -> None:
        """Test that the verdict carries the run identity."""
        verdict = evaluate_membership(
            dataset, TRUE_MODEL, _config("alg1-smoother"), HyperParams(m=5, q=4),
            SeedSpec(master_seed=9),
        )
        assert verdict.model == TRUE_MODEL.identifier
        assert verdict.algorithm == "alg1-smoother"
        assert (verdict.m, verdict.q, verdict.seed) == (5, 4, 9)
        assert verdict.domain_box_inferred
