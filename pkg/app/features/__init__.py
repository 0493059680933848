"""Feature modules."""

