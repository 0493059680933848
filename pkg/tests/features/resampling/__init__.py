"""Resampling feature tests package."""
