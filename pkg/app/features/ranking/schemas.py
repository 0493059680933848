"""Schemas for rank outcomes."""

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class RankOutcome:
    """
    Rank of the original sample among all m samples.

    Attributes:
        z: length-m statistics, z[0] belongs to the original sample
        rank: 1 + number of alternatives ordered below the original, in [1, m]
        pi: tie-breaking permutation
        included: rank <= q, or None when no threshold was applied
    """

    z: np.ndarray
    rank: int
    pi: np.ndarray
    included: Optional[bool] = None

    @property
    def m(self) -> int:
        return int(self.z.shape[0])
