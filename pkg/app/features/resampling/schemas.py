"""Schemas for resampled label bundles."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SampleBundle:
    """
    The original sample and its m - 1 alternatives for one candidate.

    Attributes:
        inputs: (n, d) inputs shared by every sample
        labels: (m, n) ±1 matrix; row 0 holds the observed labels
        pi: permutation of {0, ..., m - 1} used for tie-breaking
        theta_id: identifier of the candidate that generated rows 1..m-1
    """

    inputs: np.ndarray
    labels: np.ndarray
    pi: np.ndarray
    theta_id: str

    def __post_init__(self) -> None:
        self.labels.setflags(write=False)
        self.pi.setflags(write=False)

    @property
    def m(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n(self) -> int:
        return int(self.labels.shape[1])
