"""Alternative label samples and tie-breaking permutations."""
