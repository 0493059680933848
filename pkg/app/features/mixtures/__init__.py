"""Candidate regression-model families and synthetic data generators."""
