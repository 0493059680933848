from app.core.errors import ComputationError


class ZeroNormalizerError(ComputationError):
    def __init__(self, kernel: str, point_index: int):
        self.kernel = kernel
        self.point_index = point_index
        self.message = (
            f"Kernel '{kernel}' gives zero total weight at evaluation point "
            f"{point_index}; the smoother estimate is undefined there"
        )
        super().__init__(self.message)
