"""Shared helpers for validation and serialization."""
