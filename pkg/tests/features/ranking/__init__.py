"""Ranking feature tests package."""
