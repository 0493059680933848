from typing import Optional

from app.core.errors import InputError


class KernelConfigError(InputError):
    def __init__(self, reason: str, spec: Optional[str] = None):
        self.reason = reason
        self.spec = spec
        self.message = f"Invalid kernel '{spec}': {reason}" if spec else reason
        super().__init__(self.message)
