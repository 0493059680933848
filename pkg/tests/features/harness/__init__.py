"""Harness feature tests package."""
