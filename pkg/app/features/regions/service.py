"""Service layer for region membership.

``RegionService`` binds one observed dataset to one algorithm configuration.
Everything that depends only on the dataset (the Algorithm III Gram matrix,
the Algorithm I domain box and defaults) is prepared once; each candidate then
gets fresh label resamples, a fresh permutation and, for Algorithm I, fresh
Monte-Carlo points from streams keyed by its index.
"""

from typing import Optional

import numpy as np

from app.core.errors import InputError
from app.core.logger import logger
from app.core.rng import SeedSpec, derive_stream
from app.features.datasets.schemas import Dataset, HyperParams, RegressionModel
from app.features.discrepancy.repository import GramRepository
from app.features.discrepancy.service import alg3_statistics, residuals
from app.features.embedding.service import alg2_statistics
from app.features.kernels.schemas import GramMatrix
from app.features.local_estimates.schemas import LocalEstimatorConfig
from app.features.local_estimates.service import alg1_statistics, resolve_local_config
from app.features.ranking.schemas import RankOutcome
from app.features.ranking.service import rank_original
from app.features.regions.schemas import AlgorithmConfig, MembershipVerdict
from app.features.resampling.schemas import SampleBundle
from app.features.resampling.service import resample_labels


class RegionService:
    def __init__(
        self,
        config: AlgorithmConfig,
        dataset: Dataset,
        grams: Optional[GramRepository] = None,
    ) -> None:
        self.config = config
        self.dataset = dataset
        self.gram: Optional[GramMatrix] = None
        self.local: Optional[LocalEstimatorConfig] = None
        if config.algorithm.startswith("alg1"):
            self.local = resolve_local_config(config.local_config(), dataset.inputs)
            if self.local.domain_box_inferred:
                logger.debug(f"Inferred domain box {self.local.domain_box}")
        elif config.algorithm == "alg3":
            store = grams if grams is not None else GramRepository()
            self.gram = store.get(dataset, config.discrepancy_config().kernel)
        logger.debug(
            f"RegionService ready: {config.algorithm}, n={dataset.n}, d={dataset.d}"
        )

    @property
    def domain_box_inferred(self) -> bool:
        return bool(self.local is not None and self.local.domain_box_inferred)

    def statistics(
        self,
        bundle: SampleBundle,
        model: RegressionModel,
        seed: SeedSpec,
        theta_index: int = 0,
    ) -> np.ndarray:
        """Z vector of the configured algorithm for one resampled bundle."""
        if self.local is not None:
            stream = derive_stream(seed, "mc", theta_index, 0)
            return alg1_statistics(bundle, self.local, stream)
        if self.gram is not None:
            return alg3_statistics(residuals(bundle, model), self.gram)
        return alg2_statistics(bundle, self.config.embed_config())

    def rank(
        self,
        model: RegressionModel,
        hp: HyperParams,
        seed: SeedSpec,
        theta_index: int = 0,
    ) -> RankOutcome:
        """
        Rank of the observed sample among m samples drawn under ``model``.

        Args:
            model: Candidate regression function
            hp: Sample count and threshold
            seed: Seed of the enclosing task
            theta_index: Index of the candidate, keys its streams

        Returns:
            RankOutcome with ``included`` set from hp.q
        """
        if hp.m < self.config.min_samples:
            raise InputError(
                f"{self.config.algorithm} needs m >= {self.config.min_samples}, "
                f"got {hp.m}"
            )
        bundle = resample_labels(model, self.dataset, hp.m, seed, theta_index)
        z = self.statistics(bundle, model, seed, theta_index)
        outcome = rank_original(z, bundle.pi, hp)
        logger.debug(
            f"'{model.identifier}' (theta {theta_index}): rank {outcome.rank}/{hp.m}, "
            f"included={outcome.included}"
        )
        return outcome


def evaluate_membership(
    dataset: Dataset,
    model: RegressionModel,
    config: AlgorithmConfig,
    hp: HyperParams,
    seed: SeedSpec,
) -> MembershipVerdict:
    """Test one candidate against one dataset."""
    service = RegionService(config, dataset)
    outcome = service.rank(model, hp, seed)
    assert outcome.included is not None
    return MembershipVerdict(
        model=model.identifier,
        algorithm=config.algorithm,
        rank=outcome.rank,
        m=hp.m,
        q=hp.q,
        included=outcome.included,
        seed=seed.master_seed,
        domain_box_inferred=service.domain_box_inferred,
    )
