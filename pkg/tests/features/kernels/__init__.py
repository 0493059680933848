"""Kernels feature tests package."""
