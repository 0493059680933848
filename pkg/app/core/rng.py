"""Deterministic, split-able random streams.

Every random draw in the library comes from a stream derived from a master
seed and a tuple of labels. Streams are built on numpy's counter-based Philox
bit generator keyed through ``SeedSequence``, so the stream for a given label
tuple does not depend on how many other streams were created before it or on
which worker creates it.
"""

import zlib
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

MAX_SEED = 2**64 - 1


def purpose_key(purpose: str) -> int:
    """Stable integer key of a purpose tag (CRC-32 of its UTF-8 bytes)."""
    return zlib.crc32(purpose.encode("utf-8"))


class SeedSpec(BaseModel):
    """Master seed plus the label path of the task that owns it."""

    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(..., ge=0, le=MAX_SEED, description="64-bit master seed")
    path: Tuple[int, ...] = Field(
        default=(), description="Labels of enclosing tasks (e.g. trial index)"
    )

    def child(self, tag: str, index: int) -> "SeedSpec":
        """Seed for a sub-task, e.g. ``seed.child("trial", 17)``."""
        if index < 0:
            raise ValueError(f"Stream index must be non-negative, got {index}")
        return SeedSpec(
            master_seed=self.master_seed,
            path=self.path + (purpose_key(tag), index),
        )


def derive_stream(
    seed: SeedSpec, purpose: str, theta_index: int = 0, sample_index: int = 0
) -> np.random.Generator:
    """
    Derive the random stream owned by (purpose, theta_index, sample_index).

    Args:
        seed: Master seed and enclosing task path
        purpose: Tag separating independent uses ("labels", "perm", "mc", "data")
        theta_index: Index of the evaluated candidate (grid point)
        sample_index: Index of the sample within the evaluation

    Returns:
        A fresh numpy Generator; identical arguments give identical draws
    """
    if theta_index < 0 or sample_index < 0:
        raise ValueError(
            f"Stream indices must be non-negative, got ({theta_index}, {sample_index})"
        )
    sequence = np.random.SeedSequence(
        entropy=seed.master_seed,
        spawn_key=seed.path + (purpose_key(purpose), theta_index, sample_index),
    )
    return np.random.Generator(np.random.Philox(sequence))
