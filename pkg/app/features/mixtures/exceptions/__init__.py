from app.features.mixtures.exceptions.mixture_parameter_error import (
    MixtureParameterError,
)

__all__ = ["MixtureParameterError"]
