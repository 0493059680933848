from app.features.datasets.exceptions.dataset_validation_error import (
    DatasetValidationError,
)
from app.features.datasets.exceptions.model_output_error import ModelOutputError
from app.features.datasets.exceptions.model_range_error import ModelRangeError

__all__ = ["DatasetValidationError", "ModelOutputError", "ModelRangeError"]
