"""Base exception types shared by all features.

Feature services raise subclasses of these two bases; the command layer maps
them to process exit codes.
"""


class InputError(ValueError):
    """Malformed data, configuration or arguments (exit code 2)."""


class ComputationError(RuntimeError):
    """A computation produced an invalid result (exit code 3)."""
