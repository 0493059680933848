"""Core tests package."""

