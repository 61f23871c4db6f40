"""Unit tests for cli module."""
