"""Unit tests for reporting module."""
