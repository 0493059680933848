"""Kernel evaluation on inputs and on the joint input-label space."""

from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist

from app.features.kernels.exceptions import KernelConfigError
from app.features.kernels.schemas import GramMatrix, KernelSpec

LabelledPoint = Tuple[np.ndarray, int]


def _as_points(points: np.ndarray) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise KernelConfigError(f"points must be an n x d matrix, got {arr.ndim}-D")
    return arr


def cross_gram(kernel: KernelSpec, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """
    Matrix of k(left_a, right_b).

    Args:
        kernel: Kernel specification
        left: (a, d) points
        right: (b, d) points

    Returns:
        (a, b) float64 array

    Raises:
        KernelConfigError: if the two point sets differ in dimension
    """
    left = _as_points(left)
    right = _as_points(right)
    if left.shape[1] != right.shape[1]:
        raise KernelConfigError(
            f"dimension mismatch: {left.shape[1]} vs {right.shape[1]}", str(kernel)
        )

    if kernel.family == "gaussian":
        assert kernel.sigma is not None
        sq = cdist(left, right, "sqeuclidean")
        return np.exp(-sq / (2.0 * kernel.sigma**2))
    if kernel.family == "laplacian":
        assert kernel.sigma is not None
        dist = cdist(left, right, "euclidean")
        return np.exp(-dist / kernel.sigma)
    return (left @ right.T + kernel.c) ** kernel.degree


def evaluate(kernel: KernelSpec, x: np.ndarray, y: np.ndarray) -> float:
    """k(x, y) for two d-vectors."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    return float(cross_gram(kernel, x[None, :], y[None, :])[0, 0])


def gram(kernel: KernelSpec, points: np.ndarray) -> GramMatrix:
    """Gram matrix of ``points`` (n x d, n >= 1)."""
    points = _as_points(points)
    if points.shape[0] < 1:
        raise KernelConfigError("Gram matrix needs at least one point", str(kernel))
    values = cross_gram(kernel, points, points)
    if kernel.family == "polynomial":
        # the matrix product is not bitwise symmetric
        values = 0.5 * (values + values.T)
    return GramMatrix(values=values, kernel=kernel)


def joint_points(inputs: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Append each label as a (d+1)-th coordinate."""
    inputs = _as_points(inputs)
    labels = np.asarray(labels, dtype=np.float64).reshape(-1, 1)
    return np.hstack([inputs, labels])


def joint_evaluate(kernel: KernelSpec, s1: LabelledPoint, s2: LabelledPoint) -> float:
    """Kernel on X x {+1, -1}: the label is treated as one more real coordinate."""
    x1, y1 = s1
    x2, y2 = s2
    left = np.append(np.asarray(x1, dtype=np.float64).reshape(-1), float(y1))
    right = np.append(np.asarray(x2, dtype=np.float64).reshape(-1), float(y2))
    return evaluate(kernel, left, right)


def label_factor(kernel: KernelSpec) -> float:
    """
    Gaussian factor exp(-(y - y')^2 / (2 sigma^2)) for two different ±1 labels.

    Only the Gaussian joint kernel splits into an input part times a label part.
    """
    if kernel.family != "gaussian":
        raise KernelConfigError(
            "only the gaussian joint kernel factorizes", str(kernel)
        )
    assert kernel.sigma is not None
    return float(np.exp(-4.0 / (2.0 * kernel.sigma**2)))


def require_bounded(kernel: KernelSpec, purpose: str) -> KernelSpec:
    """Reject kernels that are not bounded and translation-invariant."""
    if not (kernel.bounded and kernel.translation_invariant):
        raise KernelConfigError(
            f"{purpose} needs a bounded, translation-invariant kernel "
            f"(gaussian or laplacian)",
            str(kernel),
        )
    return kernel


def smoothing_weights(
    kernel: KernelSpec, points: np.ndarray, inputs: np.ndarray
) -> np.ndarray:
    """
    Row-normalised weights k(p, x_j) / sum_l k(p, x_l).

    For the translation-invariant families each row's exponent is shifted by its
    maximum before exponentiating; the ratio is unchanged and far-away query
    points do not underflow to an all-zero row.

    Returns:
        (len(points), len(inputs)) array; rows whose normaliser is zero hold NaN
    """
    points = _as_points(points)
    inputs = _as_points(inputs)
    if points.shape[1] != inputs.shape[1]:
        raise KernelConfigError(
            f"dimension mismatch: {points.shape[1]} vs {inputs.shape[1]}", str(kernel)
        )
    if kernel.family == "gaussian":
        assert kernel.sigma is not None
        exponent = -cdist(points, inputs, "sqeuclidean") / (2.0 * kernel.sigma**2)
    elif kernel.family == "laplacian":
        assert kernel.sigma is not None
        exponent = -cdist(points, inputs, "euclidean") / kernel.sigma
    else:
        raw = cross_gram(kernel, points, inputs)
        totals = raw.sum(axis=1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(totals != 0.0, raw / totals, np.nan)
    weights = np.exp(exponent - exponent.max(axis=1, keepdims=True))
    return weights / weights.sum(axis=1, keepdims=True)
