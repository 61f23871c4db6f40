"""Unit tests for store module."""
