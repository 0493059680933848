"""Model families used in experiments."""

from abc import abstractmethod
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.errors import InputError
from app.features.datasets.schemas import RegressionModel

# domain box margin beyond the class locations, in units of lambda
DOMAIN_BOX_SCALES = 2.0


class SyntheticModel(RegressionModel):
    """A regression function that also knows how to draw its input marginal."""

    @abstractmethod
    def sample_inputs(self, n: int, stream: np.random.Generator) -> np.ndarray:
        """n inputs drawn from the model's input distribution, shape (n, d)."""

    def domain_box(self) -> Optional[List[Tuple[float, float]]]:
        """Box for Monte-Carlo integration; None falls back to the data bounds."""
        return None

    def sample(
        self, n: int, stream: np.random.Generator
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Inputs first, then labels with P(y = +1 | x) = (f(x) + 1) / 2."""
        inputs = self.sample_inputs(n, stream)
        prob_plus = (self.evaluate_many(inputs) + 1.0) / 2.0
        labels = np.where(stream.random(n) < prob_plus, 1, -1)
        return inputs, labels


class LaplaceDensity(BaseModel):
    """exp(-|x - mu| / scale) / (2 scale); variance 2 scale^2."""

    model_config = ConfigDict(frozen=True)

    mu: float = Field(..., description="Location")
    scale: float = Field(..., gt=0, description="Scale (lambda)")

    def log_pdf(self, x: np.ndarray) -> np.ndarray:
        return -np.abs(np.asarray(x, dtype=np.float64) - self.mu) / self.scale - np.log(
            2.0 * self.scale
        )

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.exp(self.log_pdf(x))


class MixtureModel(BaseModel, SyntheticModel):
    """
    Two-class Laplace mixture on the real line.

    With probability p the class is +1 and x ~ Laplace(mu1, lambda), otherwise
    the class is -1 and x ~ Laplace(mu2, lambda). The regression function is

        f(x) = (p phi1(x) - (1 - p) phi2(x)) / (p phi1(x) + (1 - p) phi2(x))
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: float = Field(..., gt=0, lt=1, description="Probability of the +1 class")
    lam: float = Field(..., gt=0, alias="lambda", description="Common Laplace scale")
    mu1: float = Field(default=1.0, description="Location of the +1 class")
    mu2: float = Field(default=-1.0, description="Location of the -1 class")

    @field_validator("p", "lam", "mu1", "mu2")
    @classmethod
    def _check_finite(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError("parameters must be finite")
        return value

    @property
    def identifier(self) -> str:
        return (
            f"laplace-mixture:p={self.p:g},lambda={self.lam:g},"
            f"mu1={self.mu1:g},mu2={self.mu2:g}"
        )

    @property
    def density1(self) -> LaplaceDensity:
        return LaplaceDensity(mu=self.mu1, scale=self.lam)

    @property
    def density2(self) -> LaplaceDensity:
        return LaplaceDensity(mu=self.mu2, scale=self.lam)

    def domain_box(self) -> Optional[List[Tuple[float, float]]]:
        # [-3, 3] for the default locations and lambda = 1
        low = min(self.mu1, self.mu2) - DOMAIN_BOX_SCALES * self.lam
        high = max(self.mu1, self.mu2) + DOMAIN_BOX_SCALES * self.lam
        return [(low, high)]

    def raw_values(self, points: np.ndarray) -> np.ndarray:
        if points.shape[1] != 1:
            raise InputError(
                f"{self.identifier} is one-dimensional, got d={points.shape[1]}"
            )
        x = points[:, 0]
        # (a - b) / (a + b) = tanh((log a - log b) / 2), finite in the far tails
        log_a = np.log(self.p) + self.density1.log_pdf(x)
        log_b = np.log1p(-self.p) + self.density2.log_pdf(x)
        return np.tanh(0.5 * (log_a - log_b))

    def sample_inputs(self, n: int, stream: np.random.Generator) -> np.ndarray:
        return self.sample(n, stream)[0]

    def sample(
        self, n: int, stream: np.random.Generator
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Class first (Bernoulli(p)), then the input from that class's density."""
        plus = stream.random(n) < self.p
        offsets = stream.laplace(0.0, self.lam, size=n)
        inputs = np.where(plus, self.mu1, self.mu2) + offsets
        return inputs.reshape(-1, 1), np.where(plus, 1, -1)


class GaussianTanhModel(BaseModel, SyntheticModel):
    """x ~ N(0, I_d) with f(x) = tanh(scale * w.x); d = len(weights)."""

    model_config = ConfigDict(frozen=True)

    weights: Tuple[float, ...] = Field(default=(1.0, -0.5), min_length=1)
    scale: float = Field(default=1.0, description="Steepness of the tanh link")

    @property
    def identifier(self) -> str:
        w = ",".join(f"w{k}={v:g}" for k, v in enumerate(self.weights, start=1))
        return f"gaussian-tanh:scale={self.scale:g},{w}"

    def raw_values(self, points: np.ndarray) -> np.ndarray:
        if points.shape[1] != len(self.weights):
            raise InputError(
                f"{self.identifier} expects d={len(self.weights)}, "
                f"got d={points.shape[1]}"
            )
        return np.tanh(self.scale * (points @ np.asarray(self.weights)))

    def sample_inputs(self, n: int, stream: np.random.Generator) -> np.ndarray:
        return stream.standard_normal((n, len(self.weights)))


class GeneratorSpec(BaseModel):
    """True model and sample size of a synthetic dataset."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    model: SyntheticModel = Field(..., description="Data-generating model")
    n: int = Field(..., ge=1, description="Sample size")
