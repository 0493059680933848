from typing import Optional

from app.core.errors import InputError


class DatasetValidationError(InputError):
    def __init__(self, reason: str, source: Optional[str] = None):
        self.reason = reason
        self.source = source
        self.message = f"Invalid dataset ({source}): {reason}" if source else (
            f"Invalid dataset: {reason}"
        )
        super().__init__(self.message)
