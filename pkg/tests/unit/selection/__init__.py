"""Unit tests for selection module."""
