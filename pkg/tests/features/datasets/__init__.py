"""Datasets feature tests package."""
