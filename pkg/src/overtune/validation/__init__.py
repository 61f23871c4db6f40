"""Upload validation for the HTTP service."""

from overtune.validation.file_validator import FileValidator

__all__ = ["FileValidator"]
