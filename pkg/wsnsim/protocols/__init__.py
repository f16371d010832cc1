"""Head election and cluster assignment strategies."""
