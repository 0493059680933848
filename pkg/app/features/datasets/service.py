"""Service layer for dataset validation."""

from typing import Sequence, Union

import numpy as np

from app.core.logger import logger
from app.features.datasets.exceptions import DatasetValidationError
from app.features.datasets.schemas import Dataset

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]], Sequence[float]]


def validate_dataset(raw_inputs: ArrayLike, raw_labels: ArrayLike) -> Dataset:
    """
    Check raw inputs and labels and build an immutable Dataset.

    A one-dimensional ``raw_inputs`` is read as n points with d = 1. Labels are
    coerced to integers only when they are exactly +1 or -1.

    Args:
        raw_inputs: n x d matrix of reals
        raw_labels: n reals, each exactly +1 or -1

    Returns:
        Dataset with float64 inputs and int64 labels (private copies)

    Raises:
        DatasetValidationError: on shape mismatch, bad labels or non-finite inputs
    """
    try:
        inputs = np.array(raw_inputs, dtype=np.float64)
        labels = np.array(raw_labels, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise DatasetValidationError(f"values are not numeric ({e})")

    if inputs.ndim == 1:
        inputs = inputs.reshape(-1, 1)
    if inputs.ndim != 2:
        raise DatasetValidationError(
            f"inputs must be an n x d matrix, got {inputs.ndim}-D"
        )
    if labels.ndim != 1:
        raise DatasetValidationError(f"labels must be a vector, got {labels.ndim}-D")

    n, d = inputs.shape
    if n < 1 or d < 1:
        raise DatasetValidationError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if labels.shape[0] != n:
        raise DatasetValidationError(
            f"length mismatch: {n} inputs but {labels.shape[0]} labels"
        )

    non_finite = np.argwhere(~np.isfinite(inputs))
    if non_finite.size:
        row, col = (int(v) for v in non_finite[0])
        raise DatasetValidationError(
            f"non-finite input coordinate at row {row}, column {col}"
        )

    bad = np.flatnonzero((labels != 1.0) & (labels != -1.0))
    if bad.size:
        index = int(bad[0])
        raise DatasetValidationError(
            f"label {labels[index]!r} at row {index} is not +1 or -1"
        )

    logger.debug(f"Validated dataset n={n}, d={d}")
    return Dataset(inputs=inputs, labels=labels.astype(np.int64))
