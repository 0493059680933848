"""Kernel-based confidence regions for binary classification regression functions."""
