"""Feature tests package."""

