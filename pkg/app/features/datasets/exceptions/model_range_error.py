from app.core.errors import ComputationError


class ModelRangeError(ComputationError):
    def __init__(self, identifier: str, value: float, index: int):
        self.identifier = identifier
        self.value = value
        self.index = index
        self.message = (
            f"Regression model '{identifier}' returned {value!r} at input {index}; "
            f"values must lie in [-1, 1]"
        )
        super().__init__(self.message)
