"""Integration tests running whole toolkit commands."""
