"""Unit tests for synthetic module."""
