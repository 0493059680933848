"""Embedding feature tests package."""
