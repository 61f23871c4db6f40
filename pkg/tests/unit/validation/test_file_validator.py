"""Tests for file validation."""

import io

import pytest
from fastapi import UploadFile
from starlette.datastructures import Headers

from overtune.errors import ValidationError
from overtune.validation import FileValidator


def _upload(content: bytes, filename: str = "runs.csv", content_type: str = "text/csv") -> UploadFile:
    return UploadFile(
        file=io.BytesIO(content),
        filename=filename,
        headers=Headers({"content-type": content_type}),
    )


class TestFileValidator:
    """Tests for FileValidator class."""

    def test_validate_file_provided_with_valid_filename(self):
        """Test validation passes with a valid filename."""
        # Should not raise
        FileValidator.validate_file_provided("runs.csv")

    def test_validate_file_provided_with_none(self):
        """Test validation fails when filename is None."""
        with pytest.raises(ValidationError) as exc_info:
            FileValidator.validate_file_provided(None)

        assert exc_info.value.code == "MISSING_FILENAME"
        assert "required" in exc_info.value.message.lower()

    def test_validate_extension_with_corpus_suffixes(self):
        """Test validation passes with .csv and .jsonl extensions."""
        # Should not raise
        FileValidator.validate_extension("runs.csv")
        FileValidator.validate_extension("runs.JSONL")  # Case insensitive

    def test_validate_extension_with_invalid_extension(self):
        """Test validation fails with an unsupported extension."""
        with pytest.raises(ValidationError) as exc_info:
            FileValidator.validate_extension("runs.parquet")

        assert exc_info.value.code == "INVALID_FILE_TYPE"
        assert ".csv" in exc_info.value.message

    def test_validate_content_type(self):
        """Test accepted, missing and rejected content types."""
        FileValidator.validate_content_type("text/csv; charset=utf-8")
        FileValidator.validate_content_type(None)
        with pytest.raises(ValidationError) as exc_info:
            FileValidator.validate_content_type("application/pdf")

        assert exc_info.value.code == "INVALID_CONTENT_TYPE"
        assert "application/pdf" in exc_info.value.message

    def test_validate_file_size_with_empty_file(self):
        """Test validation fails with empty file."""
        with pytest.raises(ValidationError) as exc_info:
            FileValidator.validate_file_size(0)

        assert exc_info.value.code == "EMPTY_FILE"

    def test_validate_file_size_limits(self):
        """Test validation at and above a custom limit."""
        FileValidator.validate_file_size(100, max_size=100)
        with pytest.raises(ValidationError) as exc_info:
            FileValidator.validate_file_size(101, max_size=100)

        assert exc_info.value.code == "FILE_TOO_LARGE"
        assert "exceeds" in exc_info.value.message.lower()

    @pytest.mark.asyncio
    async def test_validate_and_read_upload(self):
        """Test reading a valid corpus upload."""
        content, size, filename = await FileValidator.validate_and_read_fastapi_upload(_upload(b"study\n"))

        assert content == b"study\n"
        assert size == 6
        assert filename == "runs.csv"

    @pytest.mark.asyncio
    async def test_validate_and_read_upload_too_large(self):
        """Test that an upload above the limit is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            await FileValidator.validate_and_read_fastapi_upload(_upload(b"x" * 11), max_size=10)

        assert exc_info.value.code == "FILE_TOO_LARGE"

    @pytest.mark.asyncio
    async def test_read_metric_table_upload(self):
        """Test decoding a metric table and rejecting non-UTF-8 bytes."""
        text = await FileValidator.read_metric_table_upload(_upload(b"error,minimize\n", "table.txt", "text/plain"))
        assert text == "error,minimize\n"

        with pytest.raises(ValidationError) as exc_info:
            await FileValidator.read_metric_table_upload(_upload(b"\xff\xfe", "table.txt", "text/plain"))
        assert exc_info.value.code == "INVALID_METRIC_TABLE"

    def test_validation_error_attributes(self):
        """Test ValidationError has correct attributes."""
        error = ValidationError("Test message", "TEST_CODE")

        assert error.message == "Test message"
        assert error.code == "TEST_CODE"
        assert str(error) == "Test message"
