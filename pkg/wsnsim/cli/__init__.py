"""Scenario configuration, experiment orchestration and result files."""
