"""Core application modules."""

