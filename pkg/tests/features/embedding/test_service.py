"""Tests for Algorithm II: RKHS distances between label embeddings."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.core.errors import InputError
from app.features.embedding.exceptions import NegativeDistanceError
from app.features.embedding.schemas import EmbedConfig
from app.features.embedding.service import (
    alg2_statistics,
    clamp_sq_distance,
    pairwise_rkhs_distances,
    rkhs_sq_distance,
)
from app.features.kernels.exceptions import KernelConfigError
from app.features.kernels.schemas import KernelSpec
from app.features.kernels.service import joint_evaluate
from app.features.resampling.schemas import SampleBundle

GAUSSIAN = KernelSpec.parse("gaussian:sigma=0.5")
LAPLACIAN = KernelSpec.parse("laplacian:sigma=0.8")


def _double_sum(
    labels_i: np.ndarray, labels_j: np.ndarray, inputs: np.ndarray, kernel: KernelSpec
) -> float:
    n = inputs.shape[0]

    def block(a: np.ndarray, b: np.ndarray) -> float:
        return sum(
            joint_evaluate(kernel, (inputs[s], int(a[s])), (inputs[t], int(b[t])))
            for s in range(n)
            for t in range(n)
        )

    same = block(labels_i, labels_i) + block(labels_j, labels_j)
    return (same - 2 * block(labels_i, labels_j)) / n**2


def _random_bundle(
    stream: np.random.Generator, m: int, n: int, d: int = 1
) -> SampleBundle:
    labels = np.where(stream.random((m, n)) < 0.5, 1, -1)
    return SampleBundle(
        inputs=stream.normal(size=(n, d)),
        labels=labels,
        pi=np.arange(m),
        theta_id="test",
    )


class TestRkhsSqDistance:
    """Test rkhs_sq_distance."""

    def test_identical_rows(self) -> None:
        """Test that identical label rows are at distance 0."""
        inputs = np.array([[0.0], [0.3], [1.2]])
        row = np.array([1, -1, 1])
        assert rkhs_sq_distance(row, row, inputs, GAUSSIAN) == 0.0
        assert rkhs_sq_distance(row, row, inputs, LAPLACIAN) == 0.0

    def test_single_point_hand_expansion(self) -> None:
        """Test 2 - 2 e^-8 for one point with opposite labels."""
        value = rkhs_sq_distance(
            np.array([1]), np.array([-1]), np.array([[0.0]]), GAUSSIAN
        )
        assert value == pytest.approx(2.0 - 2.0 * math.exp(-8.0), abs=1e-12)

    @pytest.mark.parametrize("kernel", [GAUSSIAN, LAPLACIAN], ids=str)
    def test_matches_double_sum(self, kernel: KernelSpec) -> None:
        """Test agreement with the brute-force double sum on 100 random instances."""
        stream = np.random.default_rng(11)
        for _ in range(100):
            n = int(stream.integers(1, 7))
            d = int(stream.integers(1, 3))
            inputs = stream.normal(size=(n, d))
            labels_i = np.where(stream.random(n) < 0.5, 1, -1)
            labels_j = np.where(stream.random(n) < 0.5, 1, -1)
            expected = max(_double_sum(labels_i, labels_j, inputs, kernel), 0.0)
            actual = rkhs_sq_distance(labels_i, labels_j, inputs, kernel)
            assert actual == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("kernel", [GAUSSIAN, LAPLACIAN], ids=str)
    def test_metric_properties(self, kernel: KernelSpec) -> None:
        """Test symmetry and the triangle inequality of the square roots."""
        stream = np.random.default_rng(12)
        for _ in range(50):
            n = int(stream.integers(1, 6))
            inputs = stream.normal(size=(n, 1))
            a, b, c = (np.where(stream.random(n) < 0.5, 1, -1) for _ in range(3))
            ab = rkhs_sq_distance(a, b, inputs, kernel)
            ba = rkhs_sq_distance(b, a, inputs, kernel)
            assert ab == pytest.approx(ba, abs=1e-12)
            ac = rkhs_sq_distance(a, c, inputs, kernel)
            bc = rkhs_sq_distance(b, c, inputs, kernel)
            assert math.sqrt(ac) <= math.sqrt(ab) + math.sqrt(bc) + 1e-8

    def test_length_mismatch(self) -> None:
        """Test that rows and inputs must agree in length."""
        with pytest.raises(InputError):
            rkhs_sq_distance(
                np.array([1, 1]), np.array([1]), np.zeros((2, 1)), GAUSSIAN
            )

    def test_polynomial_rejected(self) -> None:
        """Test that an unbounded kernel is refused."""
        with pytest.raises(KernelConfigError):
            rkhs_sq_distance(
                np.array([1]),
                np.array([-1]),
                np.zeros((1, 1)),
                KernelSpec.parse("polynomial:c=1,deg=2"),
            )


class TestClamp:
    """Test clamp_sq_distance."""

    def test_rounding_noise_clamped(self) -> None:
        """Test that values just below zero become 0."""
        assert clamp_sq_distance(-5e-11, "test") == 0.0
        assert clamp_sq_distance(0.25, "test") == 0.25

    def test_large_negative_raises(self) -> None:
        """Test that a clearly negative value raises NegativeDistanceError."""
        with pytest.raises(NegativeDistanceError) as exc_info:
            clamp_sq_distance(-1e-6, "samples (0, 1)")
        assert exc_info.value.where == "samples (0, 1)"


class TestAlg2Statistics:
    """Test alg2_statistics."""

    def test_identical_rows(self) -> None:
        """Test that identical rows give zero statistics."""
        bundle = SampleBundle(
            inputs=np.array([[0.0], [1.0]]),
            labels=np.array([[1, -1]] * 3),
            pi=np.arange(3),
            theta_id="test",
        )
        z = alg2_statistics(bundle, EmbedConfig(kernel=GAUSSIAN))
        np.testing.assert_allclose(z, 0.0)

    @pytest.mark.parametrize("kernel", [GAUSSIAN, LAPLACIAN], ids=str)
    def test_row_sums_of_pairwise_distances(self, kernel: KernelSpec) -> None:
        """Test Z = [2a, a + b, a + b] when d01 = d02 = a and d12 = b."""
        inputs = np.array([[0.0], [0.7]])
        # rows 1 and 2 differ from row 0 in one mirrored position each
        bundle = SampleBundle(
            inputs=inputs,
            labels=np.array([[1, 1], [-1, 1], [1, -1]]),
            pi=np.arange(3),
            theta_id="test",
        )
        a = rkhs_sq_distance(bundle.labels[0], bundle.labels[1], inputs, kernel)
        a2 = rkhs_sq_distance(bundle.labels[0], bundle.labels[2], inputs, kernel)
        b = rkhs_sq_distance(bundle.labels[1], bundle.labels[2], inputs, kernel)
        assert a == pytest.approx(a2, abs=1e-12)
        z = alg2_statistics(bundle, EmbedConfig(kernel=kernel))
        np.testing.assert_allclose(z, [2 * a, a + b, a + b], atol=1e-12)

    def test_matrix_matches_pairwise(self) -> None:
        """Test that the vectorised matrix agrees with per-pair distances."""
        bundle = _random_bundle(np.random.default_rng(13), m=5, n=7, d=2)
        for kernel in (GAUSSIAN, LAPLACIAN):
            matrix = pairwise_rkhs_distances(bundle, kernel)
            for i in range(5):
                for j in range(5):
                    expected = rkhs_sq_distance(
                        bundle.labels[i], bundle.labels[j], bundle.inputs, kernel
                    )
                    assert matrix[i, j] == pytest.approx(expected, abs=1e-10)

    def test_needs_two_samples(self) -> None:
        """Test that m < 2 is rejected."""
        bundle = SampleBundle(
            inputs=np.zeros((1, 1)),
            labels=np.array([[1]]),
            pi=np.arange(1),
            theta_id="test",
        )
        with pytest.raises(InputError):
            alg2_statistics(bundle, EmbedConfig(kernel=GAUSSIAN))


class TestEmbedConfig:
    """Test EmbedConfig."""

    def test_polynomial_rejected(self) -> None:
        """Test that the joint kernel must be bounded."""
        with pytest.raises(ValidationError):
            EmbedConfig(kernel=KernelSpec.parse("polynomial:c=1,deg=2"))
