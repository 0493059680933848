"""Mixtures feature tests package."""
