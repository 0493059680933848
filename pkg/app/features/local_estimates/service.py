"""Service layer for Algorithm I.

Each sample's labels give a local regression estimate (k-nearest-neighbour
average or kernel smoother). The statistic of sample i is the summed squared
L2 distance between its estimate and every other sample's estimate, with the
integral replaced by an average over Monte-Carlo points drawn uniformly from
the input domain. All pairs share the same points.
"""

from typing import Callable, List

import numpy as np
from scipy.spatial.distance import cdist

from app.core.errors import InputError
from app.core.logger import logger
from app.features.kernels.schemas import KernelSpec
from app.features.kernels.service import smoothing_weights
from app.features.local_estimates.exceptions import ZeroNormalizerError
from app.features.local_estimates.schemas import (
    Bounds,
    LocalEstimatorConfig,
    default_k_n,
    default_mc_points,
)
from app.features.resampling.schemas import SampleBundle

Estimate = Callable[[np.ndarray], np.ndarray]

DOMAIN_PADDING = 0.05


def _points(x: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(x, dtype=np.float64).reshape(-1, d)


def neighbour_indices(inputs: np.ndarray, points: np.ndarray, k_n: int) -> np.ndarray:
    """
    Indices of the k_n nearest inputs of every point, nearest first.

    Equal distances are resolved in favour of the smaller input index.
    """
    n = inputs.shape[0]
    if not 1 <= k_n <= n:
        raise InputError(f"k_n must lie in [1, {n}], got {k_n}")
    distances = cdist(points, inputs, "sqeuclidean")
    return np.argsort(distances, axis=1, kind="stable")[:, :k_n]


def knn_estimate(
    labels_row: np.ndarray, inputs: np.ndarray, x: np.ndarray, k_n: int
) -> float:
    """(1 / k_n) * sum of the labels of the k_n inputs nearest to x."""
    inputs = np.asarray(inputs, dtype=np.float64)
    nearest = neighbour_indices(inputs, _points(x, inputs.shape[1]), k_n)[0]
    return float(np.asarray(labels_row, dtype=np.float64)[nearest].sum() / k_n)


def smoother_estimate(
    labels_row: np.ndarray, inputs: np.ndarray, x: np.ndarray, kernel: KernelSpec
) -> float:
    """sum_j y_j k(x, x_j) / sum_l k(x, x_l), normalised over all n inputs."""
    inputs = np.asarray(inputs, dtype=np.float64)
    weights = smoothing_weights(kernel, _points(x, inputs.shape[1]), inputs)
    if not np.all(np.isfinite(weights)):
        raise ZeroNormalizerError(str(kernel), 0)
    return float(weights[0] @ np.asarray(labels_row, dtype=np.float64))


def make_estimate(
    labels_row: np.ndarray, inputs: np.ndarray, cfg: LocalEstimatorConfig
) -> Estimate:
    """Vectorised estimate x -> f(x) for one sample (used for single-pair distances)."""
    inputs = np.asarray(inputs, dtype=np.float64)
    labels = np.asarray(labels_row, dtype=np.float64)

    def estimate(points: np.ndarray) -> np.ndarray:
        at = _points(points, inputs.shape[1])
        return _estimate_matrix(labels[None, :], inputs, at, cfg)[0]

    return estimate


def mc_l2_distance(f_i: Estimate, f_j: Estimate, mc_points: np.ndarray) -> float:
    """(1 / l) * sum_k (f_i(x_k) - f_j(x_k))^2 over the Monte-Carlo points."""
    mc_points = np.asarray(mc_points, dtype=np.float64)
    if mc_points.shape[0] == 0:
        raise InputError("Monte-Carlo distance needs at least one point")
    diff = np.asarray(f_i(mc_points), dtype=np.float64) - np.asarray(
        f_j(mc_points), dtype=np.float64
    )
    return float(np.mean(diff**2))


def infer_domain_box(inputs: np.ndarray) -> List[Bounds]:
    """Bounding box of the data widened by 5% of its width on each side."""
    low = inputs.min(axis=0)
    high = inputs.max(axis=0)
    width = high - low
    pad = DOMAIN_PADDING * np.where(width > 0, width, 1.0)
    return [(float(lo), float(hi)) for lo, hi in zip(low - pad, high + pad)]


def resolve_local_config(
    cfg: LocalEstimatorConfig, inputs: np.ndarray
) -> LocalEstimatorConfig:
    """Fill the data-dependent defaults of ``cfg`` for ``inputs``."""
    n, d = inputs.shape
    updates: dict = {}
    if cfg.mode == "knn":
        k_n = cfg.k_n if cfg.k_n is not None else default_k_n(n)
        if not 1 <= k_n <= n:
            raise InputError(f"k_n must lie in [1, {n}], got {k_n}")
        updates["k_n"] = k_n
    if cfg.mc_points is None:
        updates["mc_points"] = default_mc_points(n)
    if cfg.domain_box is None:
        updates["domain_box"] = infer_domain_box(inputs)
        updates["domain_box_inferred"] = True
    elif len(cfg.domain_box) != d:
        raise InputError(
            f"domain_box has {len(cfg.domain_box)} coordinates, inputs have {d}"
        )
    return cfg.model_copy(update=updates) if updates else cfg


def draw_mc_points(
    box: List[Bounds], count: int, stream: np.random.Generator
) -> np.ndarray:
    """``count`` points uniform on the axis-aligned box."""
    low = np.array([b[0] for b in box], dtype=np.float64)
    high = np.array([b[1] for b in box], dtype=np.float64)
    return stream.uniform(low, high, size=(count, low.shape[0]))


def _estimate_matrix(
    labels: np.ndarray,
    inputs: np.ndarray,
    points: np.ndarray,
    cfg: LocalEstimatorConfig,
) -> np.ndarray:
    """Estimates of every label row at every point, shape (rows, points)."""
    labels = np.asarray(labels, dtype=np.float64)
    if cfg.mode == "knn":
        k_n = cfg.k_n if cfg.k_n is not None else default_k_n(inputs.shape[0])
        nearest = neighbour_indices(inputs, points, k_n)
        return labels[:, nearest].sum(axis=2) / k_n

    assert cfg.kernel is not None
    weights = smoothing_weights(cfg.kernel, points, inputs)
    bad = np.flatnonzero(~np.all(np.isfinite(weights), axis=1))
    if bad.size:
        raise ZeroNormalizerError(str(cfg.kernel), int(bad[0]))
    return labels @ weights.T


def pairwise_mc_distances(estimates: np.ndarray) -> np.ndarray:
    """Matrix of mean squared differences between rows of ``estimates``."""
    m = estimates.shape[0]
    distances = np.empty((m, m), dtype=np.float64)
    for i in range(m):
        distances[i] = np.mean((estimates - estimates[i]) ** 2, axis=1)
    return distances


def alg1_statistics(
    bundle: SampleBundle, cfg: LocalEstimatorConfig, stream: np.random.Generator
) -> np.ndarray:
    """
    Cumulative distances Z[i] = sum_j ||f_i - f_j||^2 for every sample.

    Args:
        bundle: Original and alternative labels (m >= 3)
        cfg: Estimator settings; missing defaults are resolved on the bundle inputs
        stream: Stream owning the Monte-Carlo points of this evaluation

    Returns:
        length-m vector of non-negative statistics
    """
    if bundle.m < 3:
        raise InputError(f"Algorithm I needs m >= 3 samples, got {bundle.m}")
    inputs = np.asarray(bundle.inputs, dtype=np.float64)
    cfg = resolve_local_config(cfg, inputs)
    assert cfg.domain_box is not None and cfg.mc_points is not None

    points = draw_mc_points(cfg.domain_box, cfg.mc_points, stream)
    estimates = _estimate_matrix(bundle.labels, inputs, points, cfg)
    z = pairwise_mc_distances(estimates).sum(axis=1)
    logger.debug(
        f"Algorithm I ({cfg.mode}) statistics for '{bundle.theta_id}': "
        f"Z0={z[0]:.6g}, l={cfg.mc_points}"
    )
    return z
