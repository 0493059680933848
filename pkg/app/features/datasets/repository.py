"""CSV storage of datasets (header ``x1,...,xd,y``)."""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from app.core.logger import logger
from app.features.datasets.exceptions import DatasetValidationError
from app.features.datasets.schemas import Dataset
from app.features.datasets.service import validate_dataset

# %.17g text read back with the round_trip parser reproduces every float64
FLOAT_FORMAT = "%.17g"


class DatasetRepository:
    def load(self, path: Union[str, Path]) -> Dataset:
        source = str(path)
        logger.debug(f"Loading dataset from {source}")
        try:
            frame = pd.read_csv(path, dtype=np.float64, float_precision="round_trip")
        except FileNotFoundError:
            raise DatasetValidationError("file not found", source)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
            raise DatasetValidationError(f"malformed CSV ({e})", source)

        columns = [str(c).strip() for c in frame.columns]
        if len(columns) < 2 or columns[-1] != "y":
            raise DatasetValidationError(
                "header must be x1,...,xd,y with the label column last", source
            )
        expected = [f"x{k}" for k in range(1, len(columns))]
        if columns[:-1] != expected:
            raise DatasetValidationError(
                f"input columns must be {','.join(expected)}, "
                f"got {','.join(columns[:-1])}",
                source,
            )
        if frame.empty:
            raise DatasetValidationError("no data rows", source)

        try:
            dataset = validate_dataset(
                frame[expected].to_numpy(), frame["y"].to_numpy()
            )
        except DatasetValidationError as e:
            raise DatasetValidationError(e.reason, source)
        logger.info(f"Loaded dataset from {source}: n={dataset.n}, d={dataset.d}")
        return dataset

    def _frame(self, dataset: Dataset) -> pd.DataFrame:
        frame = pd.DataFrame(
            dataset.inputs, columns=[f"x{k}" for k in range(1, dataset.d + 1)]
        )
        frame["y"] = dataset.labels
        return frame

    def render(self, dataset: Dataset) -> str:
        return self._frame(dataset).to_csv(
            index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )

    def save(self, dataset: Dataset, path: Union[str, Path]) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.with_name(target.name + ".tmp")
        tmp.write_text(self.render(dataset), encoding="utf-8")
        tmp.replace(target)
        logger.info(f"Saved dataset to {target}: n={dataset.n}, d={dataset.d}")
