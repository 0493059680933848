"""Service layer for label resampling."""

import numpy as np

from app.core.errors import InputError
from app.core.logger import logger
from app.core.rng import SeedSpec, derive_stream
from app.features.datasets.schemas import Dataset, RegressionModel
from app.features.resampling.schemas import SampleBundle


def draw_permutation(m: int, stream: np.random.Generator) -> np.ndarray:
    """Uniformly random permutation of {0, ..., m - 1}."""
    if m < 1:
        raise InputError(f"permutation size must be >= 1, got {m}")
    return stream.permutation(m).astype(np.int64)


def resample_labels(
    model: RegressionModel,
    dataset: Dataset,
    m: int,
    seed: SeedSpec,
    theta_index: int = 0,
) -> SampleBundle:
    """
    Generate m - 1 alternative label vectors under ``model``.

    Row i >= 1 draws one uniform per input from its own stream
    ("labels", theta_index, i) and sets y = +1 when u < (f(x) + 1) / 2.
    The permutation comes from ("perm", theta_index, 0).

    Args:
        model: Candidate regression function
        dataset: Observed data; its labels become row 0
        m: Total number of samples (>= 2)
        seed: Seed of the enclosing task
        theta_index: Index of the candidate within the run

    Returns:
        SampleBundle with an (m, n) label matrix

    Raises:
        InputError: if m < 2
        ModelRangeError: if the model leaves [-1, 1] on an input
    """
    if m < 2:
        raise InputError(f"need m >= 2 samples, got {m}")

    prob_plus = (model.evaluate_many(dataset.inputs) + 1.0) / 2.0
    labels = np.empty((m, dataset.n), dtype=np.int64)
    labels[0] = dataset.labels
    for i in range(1, m):
        uniforms = derive_stream(seed, "labels", theta_index, i).random(dataset.n)
        labels[i] = np.where(uniforms < prob_plus, 1, -1)

    pi = draw_permutation(m, derive_stream(seed, "perm", theta_index, 0))
    logger.debug(
        f"Resampled {m - 1} label rows for '{model.identifier}' (theta {theta_index})"
    )
    return SampleBundle(
        inputs=dataset.inputs, labels=labels, pi=pi, theta_id=model.identifier
    )
