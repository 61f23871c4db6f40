"""Unit tests for replication module."""
