"""Kernel functions and Gram matrices."""
