from app.core.errors import ComputationError


class ModelOutputError(ComputationError):
    def __init__(self, identifier: str, returned: int, expected: int):
        self.identifier = identifier
        self.returned = returned
        self.expected = expected
        self.message = (
            f"Regression model '{identifier}' returned {returned} values "
            f"for {expected} points"
        )
        super().__init__(self.message)
