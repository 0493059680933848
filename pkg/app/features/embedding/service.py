"""Service layer for Algorithm II.

Sample i is embedded as h_i = (1/n) sum_a k(., (x_a, y_ia)) in the RKHS of the
joint kernel. Squared distances between embeddings follow from the reproducing
property:

    ||h_i - h_j||^2 = (1/n^2) [sum k(s_i, s_i) + sum k(s_j, s_j) - 2 sum k(s_i, s_j)]

With the Gaussian joint kernel and +/-1 labels the label factor is 1 for equal
labels and c = exp(-2 / sigma^2) otherwise, which collapses the expansion to
(1 - c) / (2 n^2) * (y_i - y_j)' K_X (y_i - y_j) with the input-only Gram K_X.
"""

import numpy as np

from app.core.errors import InputError
from app.core.logger import logger
from app.features.embedding.exceptions import NegativeDistanceError
from app.features.embedding.schemas import NEGATIVE_TOLERANCE, EmbedConfig
from app.features.kernels.schemas import KernelSpec
from app.features.kernels.service import (
    cross_gram,
    joint_points,
    label_factor,
    require_bounded,
)
from app.features.resampling.schemas import SampleBundle


def clamp_sq_distance(value: float, where: str) -> float:
    """Map rounding noise below zero to 0; reject anything more negative."""
    if value < -NEGATIVE_TOLERANCE:
        raise NegativeDistanceError(value, where)
    return max(value, 0.0)


def _block_sum(kernel: KernelSpec, left: np.ndarray, right: np.ndarray) -> float:
    return float(cross_gram(kernel, left, right).sum())


def _gaussian_sq_distance(
    labels_i: np.ndarray,
    labels_j: np.ndarray,
    input_gram: np.ndarray,
    kernel: KernelSpec,
) -> float:
    n = labels_i.shape[0]
    diff = labels_i - labels_j
    return (1.0 - label_factor(kernel)) / (2.0 * n**2) * float(diff @ input_gram @ diff)


def rkhs_sq_distance(
    labels_i: np.ndarray, labels_j: np.ndarray, inputs: np.ndarray, kernel: KernelSpec
) -> float:
    """
    Squared RKHS distance between the empirical embeddings of two label rows.

    Args:
        labels_i: ±1 labels of sample i
        labels_j: ±1 labels of sample j
        inputs: (n, d) inputs shared by both samples
        kernel: Joint kernel (gaussian or laplacian)

    Returns:
        non-negative float

    Raises:
        InputError: if the rows and inputs disagree in length
        NegativeDistanceError: if rounding leaves a value below -1e-10
    """
    require_bounded(kernel, "Algorithm II")
    inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    labels_i = np.asarray(labels_i, dtype=np.float64).reshape(-1)
    labels_j = np.asarray(labels_j, dtype=np.float64).reshape(-1)
    n = inputs.shape[0]
    if labels_i.shape[0] != n or labels_j.shape[0] != n or n < 1:
        raise InputError(
            f"label rows of length {labels_i.shape[0]} and {labels_j.shape[0]} "
            f"do not match {n} inputs"
        )

    if kernel.family == "gaussian":
        value = _gaussian_sq_distance(
            labels_i, labels_j, cross_gram(kernel, inputs, inputs), kernel
        )
    else:
        s_i = joint_points(inputs, labels_i)
        s_j = joint_points(inputs, labels_j)
        value = (
            _block_sum(kernel, s_i, s_i)
            + _block_sum(kernel, s_j, s_j)
            - 2.0 * _block_sum(kernel, s_i, s_j)
        ) / n**2
    return clamp_sq_distance(value, "one pair of samples")


def _gaussian_distance_matrix(
    labels: np.ndarray, inputs: np.ndarray, kernel: KernelSpec
) -> np.ndarray:
    n = labels.shape[1]
    input_gram = cross_gram(kernel, inputs, inputs)
    quad = labels @ input_gram @ labels.T
    quad = 0.5 * (quad + quad.T)
    diag = np.diag(quad)
    scale = (1.0 - label_factor(kernel)) / (2.0 * n**2)
    return scale * (diag[:, None] + diag[None, :] - 2.0 * quad)


def _joint_distance_matrix(
    labels: np.ndarray, inputs: np.ndarray, kernel: KernelSpec
) -> np.ndarray:
    m, n = labels.shape
    samples = [joint_points(inputs, row) for row in labels]
    own = np.array([_block_sum(kernel, s, s) for s in samples])
    distances = np.zeros((m, m), dtype=np.float64)
    for i in range(m):
        for j in range(i + 1, m):
            cross = _block_sum(kernel, samples[i], samples[j])
            distances[i, j] = distances[j, i] = (own[i] + own[j] - 2.0 * cross) / n**2
    return distances


def pairwise_rkhs_distances(bundle: SampleBundle, kernel: KernelSpec) -> np.ndarray:
    """Symmetric (m, m) matrix of squared embedding distances, zero diagonal."""
    inputs = np.asarray(bundle.inputs, dtype=np.float64)
    labels = np.asarray(bundle.labels, dtype=np.float64)
    if kernel.family == "gaussian":
        distances = _gaussian_distance_matrix(labels, inputs, kernel)
    else:
        distances = _joint_distance_matrix(labels, inputs, kernel)
    np.fill_diagonal(distances, 0.0)

    worst = float(distances.min())
    if worst < -NEGATIVE_TOLERANCE:
        i, j = np.unravel_index(int(distances.argmin()), distances.shape)
        raise NegativeDistanceError(worst, f"samples ({i}, {j})")
    return np.maximum(distances, 0.0)


def alg2_statistics(bundle: SampleBundle, cfg: EmbedConfig) -> np.ndarray:
    """Z[i] = sum_j ||h_i - h_j||^2 for every sample of the bundle (m >= 2)."""
    if bundle.m < 2:
        raise InputError(f"Algorithm II needs m >= 2 samples, got {bundle.m}")
    z = pairwise_rkhs_distances(bundle, cfg.kernel).sum(axis=1)
    logger.debug(
        f"Algorithm II statistics for '{bundle.theta_id}' with {cfg.kernel}: "
        f"Z0={z[0]:.6g}"
    )
    return z
