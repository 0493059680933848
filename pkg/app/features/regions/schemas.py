"""Schemas for algorithm selection and membership verdicts."""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.features.discrepancy.schemas import DiscrepancyConfig
from app.features.embedding.schemas import EmbedConfig
from app.features.kernels.schemas import KernelSpec
from app.features.local_estimates.schemas import Bounds, LocalEstimatorConfig

AlgorithmId = Literal["alg1-knn", "alg1-smoother", "alg2", "alg3"]

ALGORITHMS: tuple[str, ...] = ("alg1-knn", "alg1-smoother", "alg2", "alg3")

DEFAULT_KERNEL = KernelSpec(family="gaussian", sigma=0.5)


class AlgorithmConfig(BaseModel):
    """
    Ranking algorithm and its settings.

    ``kernel`` is the smoother kernel for alg1-smoother, the joint kernel for
    alg2 and the Gram kernel for alg3; alg1-knn ignores it.
    """

    model_config = ConfigDict(frozen=True)

    algorithm: AlgorithmId = Field(default="alg3", description="Algorithm id")
    kernel: KernelSpec = Field(default=DEFAULT_KERNEL, description="Kernel")
    k_n: Optional[int] = Field(default=None, ge=1, description="kNN window (alg1-knn)")
    mc_points: Optional[int] = Field(
        default=None, ge=1, description="Monte-Carlo points (alg1)"
    )
    domain_box: Optional[List[Bounds]] = Field(
        default=None, description="Input domain bounds (alg1)"
    )

    @model_validator(mode="after")
    def _check_algorithm_settings(self) -> "AlgorithmConfig":
        # builds the per-algorithm config so that bad combinations fail early
        if self.algorithm.startswith("alg1"):
            self.local_config()
        elif self.algorithm == "alg2":
            self.embed_config()
        else:
            self.discrepancy_config()
        return self

    @property
    def min_samples(self) -> int:
        return 3 if self.algorithm.startswith("alg1") else 2

    def local_config(self) -> LocalEstimatorConfig:
        smoother = self.algorithm == "alg1-smoother"
        return LocalEstimatorConfig(
            mode="smoother" if smoother else "knn",
            k_n=self.k_n,
            kernel=self.kernel if smoother else None,
            mc_points=self.mc_points,
            domain_box=self.domain_box,
        )

    def with_default_box(self, box: Optional[List[Bounds]]) -> "AlgorithmConfig":
        """Fill an unset Algorithm I domain box; explicit boxes and alg2/alg3 win."""
        if box is None or self.domain_box is not None:
            return self
        if not self.algorithm.startswith("alg1"):
            return self
        return self.model_copy(update={"domain_box": list(box)})

    def embed_config(self) -> EmbedConfig:
        return EmbedConfig(kernel=self.kernel)

    def discrepancy_config(self) -> DiscrepancyConfig:
        return DiscrepancyConfig(kernel=self.kernel)


class MembershipVerdict(BaseModel):
    """Outcome of testing one candidate on one dataset."""

    model: str = Field(..., description="Candidate identifier")
    algorithm: AlgorithmId
    rank: int = Field(..., ge=1)
    m: int = Field(..., ge=2)
    q: int = Field(..., ge=1)
    included: bool
    seed: int = Field(..., ge=0)
    domain_box_inferred: bool = Field(
        default=False, description="True when alg1 inferred the domain from the data"
    )
