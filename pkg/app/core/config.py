"""Application configuration: environment settings and run configuration files."""

import hashlib
import json
import os
import tomllib
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import InputError
from app.core.rng import MAX_SEED

load_dotenv()

DEFAULT_KERNEL = "gaussian:sigma=0.5"
DEFAULT_MODEL = "laplace-mixture:p=0.5,lambda=1,mu1=1,mu2=-1"
DEFAULT_FALSE_MODEL = "laplace-mixture:p=0.5,lambda=2,mu1=1,mu2=-1"


class Settings:
    """Application settings loaded from environment variables."""

    def __init__(self) -> None:
        self.log_level: str = os.getenv("LOG_LEVEL", "INFO")
        self.log_file: Optional[str] = os.getenv("LOG_FILE")
        self.default_seed: int = self._get_optional_int("REGIONS_SEED") or 0
        self.workers: int = self._get_optional_int("REGIONS_WORKERS") or 1
        self.output_dir: str = os.getenv("REGIONS_OUTPUT_DIR", ".")

    def _get_optional_int(self, key: str) -> Optional[int]:
        value = os.getenv(key)
        if value is None:
            return None
        try:
            return int(value)
        except ValueError:
            return None


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None


class Alg1Section(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: Optional[Literal["knn", "smoother"]] = None
    k_n: Optional[int] = Field(default=None, ge=1)
    kernel: Optional[str] = None
    mc_points: Optional[int] = Field(default=None, ge=1)
    domain_box: Optional[List[Tuple[float, float]]] = None


class KernelSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kernel: Optional[str] = None


class RunConfig(BaseModel):
    """
    One CLI run, merged from an optional TOML/JSON file and command-line flags.

    Flags win over file values. ``kernel`` given at the top level overrides the
    kernel of the selected algorithm's section.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: str = Field(default="", description="Subcommand name")
    algorithm: Literal["alg1-knn", "alg1-smoother", "alg2", "alg3"] = "alg3"
    m: int = Field(default=10, ge=2, description="Total number of samples")
    q: int = Field(default=9, ge=1, description="Rank threshold")
    seed: int = Field(default=0, ge=0, le=MAX_SEED, description="Master seed")
    n: int = Field(default=100, ge=1, description="Sample size of generated data")
    trials: int = Field(default=2000, ge=1, description="Monte-Carlo trials")
    kernel: Optional[str] = Field(default=None, description="Kernel override")
    model: str = Field(default=DEFAULT_MODEL, description="True or candidate model")
    candidate: Optional[str] = Field(
        default=None, description="Candidate tested against the true model"
    )
    n_list: List[int] = Field(default=[50, 200, 800], description="Sweep sample sizes")
    repeats: int = Field(default=200, ge=1, description="Repeats per sweep size")
    p_range: str = Field(default="0.1:0.9:0.05", description="Grid p axis")
    lambda_range: str = Field(default="0.3:2.5:0.1", description="Grid lambda axis")
    dataset: Optional[str] = Field(default=None, description="Dataset CSV path")
    out: Optional[str] = Field(default=None, description="Output path or stdout")
    workers: int = Field(default=1, ge=1, description="Parallel workers")
    alg1: Alg1Section = Field(default_factory=Alg1Section)
    alg2: KernelSection = Field(default_factory=KernelSection)
    alg3: KernelSection = Field(default_factory=KernelSection)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if self.q > self.m:
            raise ValueError(f"q must not exceed m (q={self.q}, m={self.m})")
        if self.alg1.mode is not None and self.algorithm.startswith("alg1"):
            if self.algorithm != f"alg1-{self.alg1.mode}":
                raise ValueError(
                    f"alg1.mode '{self.alg1.mode}' contradicts "
                    f"algorithm '{self.algorithm}'"
                )
        return self

    def selected_kernel(self) -> str:
        if self.kernel is not None:
            return self.kernel
        section = {"alg2": self.alg2, "alg3": self.alg3}.get(self.algorithm, self.alg1)
        return section.kernel or DEFAULT_KERNEL

    def fingerprint(self) -> str:
        """SHA-256 of everything that can change results; workers and paths excluded."""
        payload = self.model_dump_json(exclude={"workers", "out"})
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a ``.toml`` or ``.json`` run configuration into a plain dict."""
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read config file {source}: {e}")
    try:
        if source.suffix.lower() == ".toml":
            data = tomllib.loads(text)
        elif source.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            raise InputError(f"config file must be .toml or .json, got '{source.name}'")
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"malformed config file {source}: {e}")
    if not isinstance(data, dict):
        raise InputError(f"config file {source} must hold a table/object")
    return data
