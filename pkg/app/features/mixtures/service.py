"""Service layer for model specs and synthetic datasets."""

from typing import Callable, Dict

import numpy as np
from pydantic import ValidationError

from app.core.logger import logger
from app.features.datasets.schemas import ConstantModel, Dataset, RegressionModel
from app.features.datasets.service import validate_dataset
from app.features.kernels.schemas import parse_spec_parameters
from app.features.mixtures.exceptions import MixtureParameterError
from app.features.mixtures.schemas import (
    GaussianTanhModel,
    GeneratorSpec,
    MixtureModel,
    SyntheticModel,
)


def mixture_f(model: MixtureModel, x: float) -> float:
    """Regression function of the mixture at a single real x."""
    return model.evaluate(np.array([x], dtype=np.float64))


def _floats(params: Dict[str, str]) -> Dict[str, float]:
    try:
        return {key: float(value) for key, value in params.items()}
    except ValueError as e:
        raise ValueError(f"parameters must be numbers ({e})")


def _laplace_mixture(params: Dict[str, float]) -> RegressionModel:
    unknown = set(params) - {"p", "lambda", "mu1", "mu2"}
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)}")
    return MixtureModel(**{"p": 0.5, "lambda": 1.0, **params})


def _gaussian_tanh(params: Dict[str, float]) -> RegressionModel:
    weights = {k: v for k, v in params.items() if k.startswith("w")}
    unknown = set(params) - set(weights) - {"scale"}
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)}")
    if not weights:
        return GaussianTanhModel(scale=params.get("scale", 1.0))
    order = sorted(weights, key=lambda k: int(k[1:]) if k[1:].isdigit() else -1)
    expected = [f"w{k}" for k in range(1, len(order) + 1)]
    if order != expected:
        raise ValueError(f"weights must be named {','.join(expected)}")
    return GaussianTanhModel(
        weights=tuple(weights[k] for k in order), scale=params.get("scale", 1.0)
    )


def _constant(params: Dict[str, float]) -> RegressionModel:
    if set(params) != {"value"}:
        raise ValueError("constant model takes exactly one parameter 'value'")
    value = params["value"]
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"value must lie in [-1, 1], got {value}")
    return ConstantModel(value=value)


_FAMILIES: Dict[str, Callable[[Dict[str, float]], RegressionModel]] = {
    "laplace-mixture": _laplace_mixture,
    "gaussian-tanh": _gaussian_tanh,
    "constant": _constant,
}


def parse_model_spec(text: str) -> RegressionModel:
    """
    Build a candidate from strings such as
    ``laplace-mixture:p=0.5,lambda=1,mu1=1,mu2=-1``, ``gaussian-tanh:scale=2``
    or ``constant:value=0``.

    Raises:
        MixtureParameterError: for unknown families or invalid parameters
    """
    try:
        family, raw = parse_spec_parameters(text)
        if family not in _FAMILIES:
            known = ", ".join(_FAMILIES)
            raise ValueError(
                f"unknown model family '{family}' (expected one of {known})"
            )
        return _FAMILIES[family](_floats(raw))
    except (ValidationError, ValueError) as e:
        raise MixtureParameterError(str(e), text)


def generate_labels(
    model: RegressionModel, inputs: np.ndarray, stream: np.random.Generator
) -> np.ndarray:
    """±1 labels with P(y = +1 | x) = (f(x) + 1) / 2, one uniform per input."""
    prob_plus = (model.evaluate_many(inputs) + 1.0) / 2.0
    return np.where(stream.random(prob_plus.shape[0]) < prob_plus, 1, -1)


def generate_dataset(spec: GeneratorSpec, stream: np.random.Generator) -> Dataset:
    """
    Draw n labelled points from the true model.

    Args:
        spec: Data-generating model and sample size
        stream: Stream owned by this dataset

    Returns:
        Validated Dataset
    """
    inputs, labels = spec.model.sample(spec.n, stream)
    dataset = validate_dataset(inputs, labels)
    logger.debug(
        f"Generated n={dataset.n}, d={dataset.d} from '{spec.model.identifier}' "
        f"({int(np.count_nonzero(dataset.labels == 1))} positive)"
    )
    return dataset


def require_synthetic(model: RegressionModel) -> SyntheticModel:
    """The model as a data generator; constants and callables have no input law."""
    if not isinstance(model, SyntheticModel):
        raise MixtureParameterError(
            "model has no input distribution and cannot generate data", model.identifier
        )
    return model
