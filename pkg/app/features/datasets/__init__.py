"""Datasets, candidate regression models and hyper-parameters."""
