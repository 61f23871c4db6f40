"""Unit tests for validation module."""

