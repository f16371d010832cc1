"""Node deployment and planar geometry."""
