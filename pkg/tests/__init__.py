"""Test suite for overtune."""
