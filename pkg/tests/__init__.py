"""Unit tests for the coefficient machinery, certification, harness and CLI."""
