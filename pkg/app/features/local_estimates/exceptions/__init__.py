from app.features.local_estimates.exceptions.zero_normalizer_error import (
    ZeroNormalizerError,
)

__all__ = ["ZeroNormalizerError"]
