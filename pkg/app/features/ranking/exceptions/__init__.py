from app.features.ranking.exceptions.nan_statistic_error import NanStatisticError

__all__ = ["NanStatisticError"]
