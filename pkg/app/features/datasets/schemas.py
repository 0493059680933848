"""Domain types shared by every algorithm: datasets, candidates, hyper-parameters."""

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.logger import logger
from app.features.datasets.exceptions import ModelOutputError, ModelRangeError


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Observed inputs with their ±1 labels.

    Build instances through ``validate_dataset``; the constructor only freezes
    the arrays it is handed.

    Attributes:
        inputs: (n, d) float64 array
        labels: (n,) int64 array of +1/-1
    """

    inputs: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        self.inputs.setflags(write=False)
        self.labels.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def d(self) -> int:
        return int(self.inputs.shape[1])

    def fingerprint(self) -> str:
        """SHA-256 of the raw input and label bytes."""
        digest = hashlib.sha256()
        digest.update(np.ascontiguousarray(self.inputs).tobytes())
        digest.update(np.ascontiguousarray(self.labels).tobytes())
        return digest.hexdigest()


class RegressionModel(ABC):
    """
    A candidate regression function x -> f(x) in [-1, 1].

    Subclasses implement ``raw_values``. Callers go through ``evaluate_many`` or
    ``evaluate``, which reject out-of-range values instead of clamping them.
    """

    @property
    @abstractmethod
    def identifier(self) -> str:
        """Opaque name used in reports."""

    @abstractmethod
    def raw_values(self, points: np.ndarray) -> np.ndarray:
        """Unchecked values at the rows of an (n, d) array."""

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        values = np.asarray(self.raw_values(points), dtype=np.float64).reshape(-1)
        if values.shape[0] != points.shape[0]:
            raise ModelOutputError(self.identifier, values.shape[0], points.shape[0])
        bad = np.flatnonzero(~(np.isfinite(values) & (np.abs(values) <= 1.0)))
        if bad.size:
            index = int(bad[0])
            raise ModelRangeError(self.identifier, float(values[index]), index)
        return values

    def evaluate(self, x: np.ndarray) -> float:
        return float(self.evaluate_many(np.asarray(x, dtype=np.float64)[None, :])[0])


class FunctionModel(RegressionModel):
    """Wraps a vectorised callable mapping an (n, d) array to n values."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], identifier: str):
        self._fn = fn
        self._identifier = identifier

    @property
    def identifier(self) -> str:
        return self._identifier

    def raw_values(self, points: np.ndarray) -> np.ndarray:
        return self._fn(points)


class ConstantModel(BaseModel, RegressionModel):
    """f(x) = value everywhere."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="Constant regression value")

    @property
    def identifier(self) -> str:
        return f"constant:value={self.value:g}"

    def raw_values(self, points: np.ndarray) -> np.ndarray:
        return np.full(points.shape[0], self.value, dtype=np.float64)


class HyperParams(BaseModel):
    """Sample count m (original plus alternatives) and rank threshold q; p is 1."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=2, description="Total number of samples")
    q: int = Field(..., ge=1, description="Largest rank still inside the region")

    @model_validator(mode="after")
    def _check_threshold(self) -> "HyperParams":
        if self.q > self.m:
            raise ValueError(f"q must not exceed m (q={self.q}, m={self.m})")
        if self.q == self.m:
            logger.warning(
                f"q == m ({self.m}): every candidate is included, "
                f"the region cannot be consistent"
            )
        return self

    @property
    def nominal_coverage(self) -> float:
        return self.q / self.m
