"""Schemas for Algorithm III."""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.features.kernels.schemas import KernelSpec


@dataclass(frozen=True, eq=False)
class Residuals:
    """(m, n) matrix with values[i, j] = y_ij - f(x_j); each entry lies in [-2, 2]."""

    values: np.ndarray
    theta_id: str

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])


class DiscrepancyConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kernel: KernelSpec = Field(..., description="Universal kernel on the inputs")

    @field_validator("kernel")
    @classmethod
    def _check_kernel(cls, kernel: KernelSpec) -> KernelSpec:
        if kernel.family == "polynomial":
            raise ValueError(
                f"Algorithm III needs a universal kernel (gaussian or laplacian), "
                f"got '{kernel}'"
            )
        return kernel
