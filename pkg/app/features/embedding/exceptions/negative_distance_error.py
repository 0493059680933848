from app.core.errors import ComputationError


class NegativeDistanceError(ComputationError):
    def __init__(self, value: float, where: str):
        self.value = value
        self.where = where
        self.message = (
            f"Squared distance {value!r} for {where} is below the floating-point "
            f"tolerance; the kernel matrix is not positive semidefinite"
        )
        super().__init__(self.message)
