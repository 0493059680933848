from app.core.errors import ComputationError


class NanStatisticError(ComputationError):
    def __init__(self, index: int):
        self.index = index
        self.message = f"Statistic Z[{index}] is NaN; refusing to rank"
        super().__init__(self.message)
