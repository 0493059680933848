from app.features.kernels.exceptions.kernel_config_error import KernelConfigError

__all__ = ["KernelConfigError"]
