"""Tests for label resampling and permutations."""

from collections import Counter

import numpy as np
import pytest

from app.core.errors import InputError
from app.core.rng import SeedSpec, derive_stream
from app.features.datasets.exceptions import ModelRangeError
from app.features.datasets.schemas import ConstantModel, Dataset, FunctionModel
from app.features.datasets.service import validate_dataset
from app.features.resampling.service import draw_permutation, resample_labels


@pytest.fixture
def dataset() -> Dataset:
    """Twenty points on a line with alternating labels."""
    inputs = np.linspace(-1.0, 1.0, 20).reshape(-1, 1)
    return validate_dataset(inputs, np.where(np.arange(20) % 2 == 0, 1, -1))


class TestResampleLabels:
    """Test resample_labels."""

    def test_row_zero_is_original(self, dataset: Dataset) -> None:
        """Test that row 0 holds the observed labels."""
        bundle = resample_labels(
            ConstantModel(value=0.0), dataset, 5, SeedSpec(master_seed=1)
        )
        np.testing.assert_array_equal(bundle.labels[0], dataset.labels)
        assert bundle.labels.shape == (5, 20)
        assert bundle.theta_id == "constant:value=0"

    @pytest.mark.parametrize("value", [1.0, -1.0])
    def test_degenerate_models(self, dataset: Dataset, value: float) -> None:
        """Test that f = ±1 forces every resampled label."""
        bundle = resample_labels(
            ConstantModel(value=value), dataset, 6, SeedSpec(master_seed=2)
        )
        assert np.all(bundle.labels[1:] == int(value))

    def test_zero_model_is_fair_coin(self) -> None:
        """Test that f = 0 gives +1 with frequency 0.5 over 10^5 draws."""
        data = validate_dataset(np.zeros((1000, 1)), np.ones(1000))
        bundle = resample_labels(
            ConstantModel(value=0.0), data, 101, SeedSpec(master_seed=3)
        )
        fraction = float(np.mean(bundle.labels[1:] == 1))
        assert 0.495 <= fraction <= 0.505

    def test_probability_follows_model(self) -> None:
        """Test that P(y = +1) = (f(x) + 1) / 2 pointwise."""
        inputs = np.array([[-1.0], [1.0]])
        data = validate_dataset(inputs, [1, 1])
        model = FunctionModel(lambda x: 0.6 * x[:, 0], "linear")
        bundle = resample_labels(model, data, 20001, SeedSpec(master_seed=4))
        freq = np.mean(bundle.labels[1:] == 1, axis=0)
        np.testing.assert_allclose(freq, [0.2, 0.8], atol=0.01)

    def test_entries_are_plus_minus_one(self, dataset: Dataset) -> None:
        """Test that every entry is ±1 and pi is a permutation."""
        bundle = resample_labels(
            ConstantModel(value=0.3), dataset, 7, SeedSpec(master_seed=5)
        )
        assert set(np.unique(bundle.labels)) <= {-1, 1}
        np.testing.assert_array_equal(np.sort(bundle.pi), np.arange(7))

    def test_rows_use_their_own_streams(self, dataset: Dataset) -> None:
        """Test that row i does not depend on m (its stream is keyed by i)."""
        seed = SeedSpec(master_seed=6)
        small = resample_labels(ConstantModel(value=0.0), dataset, 3, seed)
        large = resample_labels(ConstantModel(value=0.0), dataset, 9, seed)
        np.testing.assert_array_equal(small.labels[1:3], large.labels[1:3])

    def test_deterministic(self, dataset: Dataset) -> None:
        """Test that equal seeds give equal bundles."""
        seed = SeedSpec(master_seed=8)
        a = resample_labels(ConstantModel(value=0.1), dataset, 5, seed, theta_index=2)
        b = resample_labels(ConstantModel(value=0.1), dataset, 5, seed, theta_index=2)
        np.testing.assert_array_equal(a.labels, b.labels)
        np.testing.assert_array_equal(a.pi, b.pi)

    def test_m_below_two(self, dataset: Dataset) -> None:
        """Test that m < 2 is rejected."""
        with pytest.raises(InputError):
            resample_labels(
                ConstantModel(value=0.0), dataset, 1, SeedSpec(master_seed=0)
            )

    def test_out_of_range_model(self, dataset: Dataset) -> None:
        """Test that a model leaving [-1, 1] aborts resampling."""
        model = FunctionModel(lambda x: 2.0 * x[:, 0], "steep")
        with pytest.raises(ModelRangeError):
            resample_labels(model, dataset, 3, SeedSpec(master_seed=0))

    def test_bundle_read_only(self, dataset: Dataset) -> None:
        """Test that bundle arrays cannot be modified."""
        bundle = resample_labels(
            ConstantModel(value=0.0), dataset, 3, SeedSpec(master_seed=0)
        )
        with pytest.raises(ValueError):
            bundle.labels[1, 0] = 1


class TestDrawPermutation:
    """Test draw_permutation."""

    def test_single_element(self) -> None:
        """Test that m = 1 gives the identity."""
        np.testing.assert_array_equal(
            draw_permutation(1, derive_stream(SeedSpec(master_seed=0), "perm")), [0]
        )

    def test_reproducible(self) -> None:
        """Test that a fixed stream gives a fixed permutation."""
        seed = SeedSpec(master_seed=9)
        a = draw_permutation(2, derive_stream(seed, "perm"))
        b = draw_permutation(2, derive_stream(seed, "perm"))
        np.testing.assert_array_equal(a, b)

    def test_uniform_over_permutations(self) -> None:
        """Test that each of the 6 permutations of 3 has frequency 1/6 ± 0.006."""
        stream = derive_stream(SeedSpec(master_seed=10), "perm")
        counts = Counter(tuple(draw_permutation(3, stream)) for _ in range(60000))
        assert len(counts) == 6
        for count in counts.values():
            assert abs(count / 60000 - 1 / 6) <= 0.006

    def test_m_below_one(self) -> None:
        """Test that m < 1 is rejected."""
        with pytest.raises(InputError):
            draw_permutation(0, derive_stream(SeedSpec(master_seed=0), "perm"))
