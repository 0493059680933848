"""Regions feature tests package."""
