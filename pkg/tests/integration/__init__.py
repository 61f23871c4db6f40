"""Integration tests for API endpoints and workflows."""

