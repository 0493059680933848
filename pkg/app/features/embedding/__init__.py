"""Algorithm II: kernel mean embeddings of each sample."""
