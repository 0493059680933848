"""Discrepancy feature tests package."""
