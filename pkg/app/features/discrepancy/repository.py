"""In-process store of Gram matrices, one per (dataset, kernel)."""

from typing import Dict, Tuple

from app.core.logger import logger
from app.features.datasets.schemas import Dataset
from app.features.kernels.schemas import GramMatrix, KernelSpec
from app.features.kernels.service import gram


class GramRepository:
    """
    Gram matrices keyed by dataset fingerprint and canonical kernel string.

    The Algorithm III matrix depends on the inputs only, so every candidate of
    a grid evaluated on one dataset reads the same matrix.
    """

    def __init__(self) -> None:
        self._store: Dict[Tuple[str, str], GramMatrix] = {}
        self.computed = 0

    def get(self, dataset: Dataset, kernel: KernelSpec) -> GramMatrix:
        key = (dataset.fingerprint(), str(kernel))
        cached = self._store.get(key)
        if cached is not None:
            return cached
        matrix = gram(kernel, dataset.inputs)
        self._store[key] = matrix
        self.computed += 1
        logger.debug(
            f"Computed {matrix.n}x{matrix.n} Gram matrix for {kernel} "
            f"(fingerprint {matrix.fingerprint()[:12]})"
        )
        return matrix

    def clear(self) -> None:
        self._store.clear()
