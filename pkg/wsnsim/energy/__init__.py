"""First-order radio energy model."""
