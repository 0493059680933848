"""Algorithm III: residual-weighted kernel discrepancy."""
