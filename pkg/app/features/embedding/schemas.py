"""Schemas for Algorithm II configuration."""

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.features.kernels.schemas import KernelSpec

# Squared distances in [-NEGATIVE_TOLERANCE, 0) are rounding noise and become 0.
NEGATIVE_TOLERANCE = 1e-10


class EmbedConfig(BaseModel):
    """Joint kernel on inputs x {+1, -1}; the label is appended as a coordinate."""

    model_config = ConfigDict(frozen=True)

    kernel: KernelSpec = Field(..., description="Bounded translation-invariant kernel")

    @field_validator("kernel")
    @classmethod
    def _check_kernel(cls, kernel: KernelSpec) -> KernelSpec:
        if not (kernel.bounded and kernel.translation_invariant):
            raise ValueError(
                f"Algorithm II needs a gaussian or laplacian kernel, got '{kernel}'"
            )
        return kernel
