"""Kernel specifications and Gram matrices."""

import hashlib
from dataclasses import dataclass
from typing import Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.features.kernels.exceptions import KernelConfigError

KernelFamily = Literal["gaussian", "laplacian", "polynomial"]

_PARAMETER_ALIASES = {"sigma": "sigma", "c": "c", "deg": "degree", "degree": "degree"}


def parse_spec_parameters(text: str) -> tuple[str, Dict[str, str]]:
    """Split ``name:key=value,key=value`` into the name and a parameter dict."""
    name, _, rest = text.strip().partition(":")
    params: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ValueError(f"expected key=value, got '{item}'")
        params[key.strip()] = value.strip()
    return name.strip(), params


class KernelSpec(BaseModel):
    """
    A positive-definite kernel on R^d.

    gaussian:   exp(-||x - y||^2 / (2 sigma^2))
    laplacian:  exp(-||x - y|| / sigma)
    polynomial: (x.y + c)^degree
    """

    model_config = ConfigDict(frozen=True)

    family: KernelFamily = Field(..., description="Kernel family")
    sigma: Optional[float] = Field(default=None, gt=0, description="Bandwidth")
    c: float = Field(default=1.0, ge=0, description="Polynomial offset")
    degree: int = Field(default=2, ge=1, description="Polynomial degree")

    @model_validator(mode="after")
    def _check_bandwidth(self) -> "KernelSpec":
        if self.family != "polynomial" and self.sigma is None:
            raise ValueError(f"{self.family} kernel needs sigma > 0")
        return self

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """Build from ``gaussian:sigma=0.5``, ``polynomial:c=1,deg=3`` and the like."""
        try:
            family, raw = parse_spec_parameters(text)
            params = {}
            for key, value in raw.items():
                if key not in _PARAMETER_ALIASES:
                    raise ValueError(f"unknown parameter '{key}'")
                params[_PARAMETER_ALIASES[key]] = value
            return cls(family=family, **params)  # type: ignore[arg-type]
        except (ValidationError, ValueError) as e:
            raise KernelConfigError(str(e), text)

    @property
    def bounded(self) -> bool:
        """True for families with k(x, y) <= k(x, x) = 1."""
        return self.family in ("gaussian", "laplacian")

    @property
    def translation_invariant(self) -> bool:
        return self.family in ("gaussian", "laplacian")

    def __str__(self) -> str:
        if self.family == "polynomial":
            return f"polynomial:c={self.c:g},deg={self.degree}"
        return f"{self.family}:sigma={self.sigma:g}"


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """n x n matrix with values[i, j] = k(x_i, x_j)."""

    values: np.ndarray
    kernel: KernelSpec

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def fingerprint(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.values).tobytes()).hexdigest()
