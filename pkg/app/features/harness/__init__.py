"""Monte-Carlo experiments: coverage, rank uniformity, consistency, rank maps."""
