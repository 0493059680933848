from app.features.harness.exceptions.harness_config_error import HarnessConfigError

__all__ = ["HarnessConfigError"]
