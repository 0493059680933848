"""Local estimates feature tests package."""
