from app.features.embedding.exceptions.negative_distance_error import (
    NegativeDistanceError,
)

__all__ = ["NegativeDistanceError"]
