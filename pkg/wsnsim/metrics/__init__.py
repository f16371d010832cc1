"""Lifetime, energy and reliability metrics."""
