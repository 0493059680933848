"""Service layer for Algorithm III.

Z[i] = (1/n^2) * eps_i' K eps_i where eps_ij = y_ij - f(x_j) and K is the Gram
matrix of the dataset inputs. K does not depend on the candidate.
"""

import numpy as np

from app.core.errors import InputError
from app.core.logger import logger
from app.features.datasets.schemas import RegressionModel
from app.features.discrepancy.schemas import Residuals
from app.features.embedding.exceptions import NegativeDistanceError
from app.features.embedding.schemas import NEGATIVE_TOLERANCE
from app.features.kernels.schemas import GramMatrix
from app.features.resampling.schemas import SampleBundle


def residuals(bundle: SampleBundle, model: RegressionModel) -> Residuals:
    """eps_ij = y_ij - f(x_j); row 0 uses the observed labels."""
    values = model.evaluate_many(bundle.inputs)
    eps = np.asarray(bundle.labels, dtype=np.float64) - values[None, :]
    return Residuals(values=eps, theta_id=model.identifier)


def alg3_statistics(res: Residuals, gram: GramMatrix) -> np.ndarray:
    """
    Residual quadratic forms for every sample.

    Args:
        res: (m, n) residual matrix
        gram: Gram matrix of the same n inputs

    Returns:
        length-m vector, rounding noise below zero clamped to 0

    Raises:
        InputError: if the residual rows and the Gram matrix differ in size
        NegativeDistanceError: if a value is below -1e-10
    """
    if res.n != gram.n:
        raise InputError(
            f"residuals have {res.n} columns, Gram matrix is {gram.n}x{gram.n}"
        )
    if res.n < 1:
        raise InputError("Algorithm III needs n >= 1")
    eps = np.asarray(res.values, dtype=np.float64)
    z = np.sum((eps @ gram.values) * eps, axis=1) / res.n**2

    worst = int(np.argmin(z))
    if z[worst] < -NEGATIVE_TOLERANCE:
        raise NegativeDistanceError(float(z[worst]), f"sample {worst}")
    z = np.maximum(z, 0.0)
    logger.debug(f"Algorithm III statistics for '{res.theta_id}': Z0={z[0]:.6g}")
    return z
