from app.core.errors import InputError


class HarnessConfigError(InputError):
    def __init__(self, reason: str):
        self.reason = reason
        self.message = f"Invalid experiment configuration: {reason}"
        super().__init__(self.message)
