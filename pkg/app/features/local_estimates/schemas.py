"""Schemas for Algorithm I configuration."""

import math
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.features.kernels.schemas import KernelSpec

Bounds = Tuple[float, float]


def default_k_n(n: int) -> int:
    """ceil(sqrt(n)): grows without bound while k_n / n -> 0."""
    return max(1, math.ceil(math.sqrt(n)))


def default_mc_points(n: int) -> int:
    return max(1000, 10 * n)


class LocalEstimatorConfig(BaseModel):
    """
    Algorithm I settings.

    Unset ``k_n``, ``mc_points`` and ``domain_box`` are filled per dataset by
    ``resolve_local_config``.
    """

    model_config = ConfigDict(frozen=True)

    mode: Literal["knn", "smoother"] = Field(default="knn", description="Estimator")
    k_n: Optional[int] = Field(default=None, ge=1, description="kNN window size")
    kernel: Optional[KernelSpec] = Field(
        default=None, description="Similarity kernel of the smoother"
    )
    mc_points: Optional[int] = Field(
        default=None, ge=1, description="Monte-Carlo points for L2 distances"
    )
    domain_box: Optional[List[Bounds]] = Field(
        default=None, description="Per-coordinate (low, high) input domain bounds"
    )
    domain_box_inferred: bool = Field(
        default=False, description="True when the box came from the data bounds"
    )

    @field_validator("domain_box")
    @classmethod
    def _check_box(cls, box: Optional[List[Bounds]]) -> Optional[List[Bounds]]:
        if box is None:
            return box
        if not box:
            raise ValueError("domain_box needs at least one coordinate")
        for low, high in box:
            if not (math.isfinite(low) and math.isfinite(high)) or high <= low:
                raise ValueError(
                    f"domain_box bounds ({low}, {high}) have no positive width"
                )
        return box

    @model_validator(mode="after")
    def _check_mode(self) -> "LocalEstimatorConfig":
        if self.mode == "smoother" and self.kernel is None:
            raise ValueError("smoother mode needs a kernel")
        return self
