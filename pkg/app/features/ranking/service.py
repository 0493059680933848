"""Service layer for ranking statistics with random tie-breaking.

The order ``a <_pi b`` holds when a < b, or a == b and pi(a) < pi(b). The rank
of the original sample grows with its statistic: a candidate whose original
statistic dominates every alternative gets rank m and leaves any region with
q < m.
"""

import math
from typing import Optional

import numpy as np

from app.core.errors import InputError
from app.features.datasets.schemas import HyperParams
from app.features.ranking.exceptions import NanStatisticError
from app.features.ranking.schemas import RankOutcome


def tie_broken_less(z_k: float, z_j: float, pi_k: int, pi_j: int) -> bool:
    """Strict total order on (statistic, permutation value) pairs."""
    if math.isnan(z_k) or math.isnan(z_j):
        raise NanStatisticError(0 if math.isnan(z_k) else 1)
    if pi_k == pi_j:
        raise InputError(f"permutation values must differ, got {pi_k} twice")
    return z_k < z_j or (z_k == z_j and pi_k < pi_j)


def _check_inputs(z: np.ndarray, pi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=np.float64).reshape(-1)
    pi = np.asarray(pi, dtype=np.int64).reshape(-1)
    nan = np.flatnonzero(np.isnan(z))
    if nan.size:
        raise NanStatisticError(int(nan[0]))
    if pi.shape[0] != z.shape[0]:
        raise InputError(
            f"{z.shape[0]} statistics but a permutation of size {pi.shape[0]}"
        )
    if not np.array_equal(np.sort(pi), np.arange(z.shape[0])):
        raise InputError(f"pi is not a permutation of 0..{z.shape[0] - 1}")
    return z, pi


def rank_position(z: np.ndarray, pi: np.ndarray, k: int) -> int:
    """1 + number of entries i != k with z[i] <_pi z[k]."""
    z, pi = _check_inputs(z, pi)
    below = (z < z[k]) | ((z == z[k]) & (pi < pi[k]))
    below[k] = False
    return 1 + int(np.count_nonzero(below))


def rank_original(
    z: np.ndarray, pi: np.ndarray, hp: Optional[HyperParams] = None
) -> RankOutcome:
    """
    Rank of z[0] among all statistics.

    Args:
        z: length-m statistics, original first
        pi: tie-breaking permutation of {0, ..., m - 1}
        hp: when given, ``included`` is filled with rank <= q

    Returns:
        RankOutcome
    """
    z, pi = _check_inputs(z, pi)
    if z.shape[0] < 1:
        raise InputError("cannot rank an empty statistic vector")
    rank = rank_position(z, pi, 0)
    included = None if hp is None else rank <= hp.q
    return RankOutcome(z=z, rank=rank, pi=pi, included=included)


def region_membership(outcome: RankOutcome, hp: HyperParams) -> bool:
    """True when the candidate stays in the region {rank <= q}."""
    return outcome.rank <= hp.q


def region_membership_general(rank: int, p: int, q: int) -> bool:
    """Two-sided form p <= rank <= q."""
    if not 1 <= p <= q:
        raise InputError(f"need 1 <= p <= q, got p={p}, q={q}")
    return p <= rank <= q


def nominal_coverage(p: int, q: int, m: int) -> float:
    """Exact coverage (q - p + 1) / m of the region {p <= rank <= q}."""
    if not 1 <= p <= q <= m:
        raise InputError(f"need 1 <= p <= q <= m, got p={p}, q={q}, m={m}")
    return (q - p + 1) / m
