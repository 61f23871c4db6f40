"""Unit tests for ingest module."""
