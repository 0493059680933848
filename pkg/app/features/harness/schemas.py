"""Pydantic schemas for experiment specs and reports."""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.rng import SeedSpec
from app.features.datasets.schemas import HyperParams
from app.features.mixtures.schemas import MixtureModel
from app.features.regions.schemas import AlgorithmConfig

# relative slack when deciding whether the last step lands on ``stop``
_AXIS_EPS = 1e-9


class Axis(BaseModel):
    """Inclusive arithmetic range start, start + step, ..., <= stop."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check_range(self) -> "Axis":
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise ValueError("axis bounds must be finite")
        if self.stop < self.start:
            raise ValueError(f"empty axis: stop {self.stop} < start {self.start}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """``start:stop:step``, e.g. ``0.1:0.9:0.05``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:step, got '{text}'")
        start, stop, step = (float(p) for p in parts)
        return cls(start=start, stop=stop, step=step)

    def values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + _AXIS_EPS)) + 1
        return self.start + self.step * np.arange(count, dtype=np.float64)


class GridSpec(BaseModel):
    """Laplace-mixture candidates over a (p, lambda) grid with fixed locations."""

    model_config = ConfigDict(frozen=True)

    p_axis: Axis = Field(default=Axis(start=0.1, stop=0.9, step=0.05))
    lambda_axis: Axis = Field(default=Axis(start=0.3, stop=2.5, step=0.1))
    mu1: float = Field(default=1.0)
    mu2: float = Field(default=-1.0)
    hp: HyperParams = Field(default=HyperParams(m=50, q=45))
    algorithm: AlgorithmConfig = Field(default=AlgorithmConfig())
    seed: SeedSpec = Field(default=SeedSpec(master_seed=0))

    @model_validator(mode="after")
    def _check_parameters(self) -> "GridSpec":
        p = self.p_axis.values()
        lam = self.lambda_axis.values()
        if p.min() <= 0.0 or p.max() >= 1.0:
            raise ValueError("p axis must stay inside (0, 1)")
        if lam.min() <= 0.0:
            raise ValueError("lambda axis must stay positive")
        return self

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.p_axis.values()), len(self.lambda_axis.values())

    def candidates(self) -> List[MixtureModel]:
        """Row-major: p varies slowest, lambda fastest."""
        return [
            MixtureModel(p=float(p), lam=float(lam), mu1=self.mu1, mu2=self.mu2)
            for p in self.p_axis.values()
            for lam in self.lambda_axis.values()
        ]


class GridCell(BaseModel):
    p: float
    lam: float
    rank: int = Field(..., ge=1)
    included: bool


class RankMap(BaseModel):
    """Ranks of the observed sample over a grid, row-major."""

    shape: Tuple[int, int]
    cells: List[GridCell]
    gram_fingerprint: Optional[str] = Field(
        default=None, description="Hash of the shared Gram matrix (alg3 only)"
    )

    def ranks(self) -> np.ndarray:
        ranks = np.array([c.rank for c in self.cells], dtype=np.int64)
        return ranks.reshape(self.shape)

    def inclusion_mask(self) -> np.ndarray:
        mask = np.array([c.included for c in self.cells], dtype=bool)
        return mask.reshape(self.shape)


class CoverageReport(BaseModel):
    """Empirical coverage of the true model against its nominal value q / m."""

    trials: int = Field(..., ge=1)
    hits: int = Field(..., ge=0)
    coverage: float
    nominal: float
    tol: float = Field(..., description="3-sigma binomial half-width")
    passed: bool

    @model_validator(mode="after")
    def _check_hits(self) -> "CoverageReport":
        if self.hits > self.trials:
            raise ValueError(f"hits ({self.hits}) exceed trials ({self.trials})")
        return self

    class Config:
        json_schema_extra = {
            "example": {
                "trials": 2000,
                "hits": 1797,
                "coverage": 0.8985,
                "nominal": 0.9,
                "tol": 0.02012,
                "passed": True,
            }
        }


class UniformityReport(BaseModel):
    """Chi-square goodness of fit of observed ranks against uniform on {1..m}."""

    m: int = Field(..., ge=1)
    trials: int = Field(..., ge=1)
    counts: List[int]
    statistic: float
    p_value: float


class SweepRow(BaseModel):
    n: int = Field(..., ge=1)
    repeats: int = Field(..., ge=1)
    excluded: int = Field(..., ge=0)
    excluded_fraction: float
