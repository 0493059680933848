"""Algorithm I: local (kNN / kernel smoother) regression estimates."""
