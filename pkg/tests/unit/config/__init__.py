"""Unit tests for configuration and logging."""
