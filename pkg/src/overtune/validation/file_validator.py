"""File validation utilities for corpus uploads."""

from pathlib import Path
from typing import Optional, Tuple

from fastapi import UploadFile

from overtune.config import DEFAULT_MAX_UPLOAD_BYTES
from overtune.errors import ValidationError


class FileValidator:
    """Validator for uploaded corpus and metric table files."""

    # Configuration
    MAX_FILE_SIZE = DEFAULT_MAX_UPLOAD_BYTES
    ALLOWED_EXTENSIONS = [".csv", ".jsonl"]
    ALLOWED_CONTENT_TYPES = [
        "text/csv",
        "text/plain",
        "application/csv",
        "application/json",
        "application/jsonl",
        "application/x-ndjson",
        "application/octet-stream",
    ]

    @staticmethod
    def validate_file_provided(filename: Optional[str]) -> None:
        """
        Raises:
            ValidationError: If filename is None or empty
        """
        if not filename:
            raise ValidationError("Filename is required", "MISSING_FILENAME")

    @staticmethod
    def validate_extension(filename: str) -> None:
        """
        Raises:
            ValidationError: If extension is not .csv or .jsonl
        """
        if Path(filename).suffix.lower() not in FileValidator.ALLOWED_EXTENSIONS:
            raise ValidationError(
                "Invalid file type. Only .csv and .jsonl corpora are allowed.",
                "INVALID_FILE_TYPE",
            )

    @staticmethod
    def validate_content_type(content_type: Optional[str]) -> None:
        """
        Raises:
            ValidationError: If content type is provided but not allowed
        """
        if not content_type:
            return
        base = content_type.split(";", 1)[0].strip().lower()
        if base not in FileValidator.ALLOWED_CONTENT_TYPES:
            expected = ", ".join(FileValidator.ALLOWED_CONTENT_TYPES)
            raise ValidationError(
                f"Invalid content type: {content_type}. Expected: {expected}",
                "INVALID_CONTENT_TYPE",
            )

    @staticmethod
    def validate_file_size(file_size: int, max_size: int = MAX_FILE_SIZE) -> None:
        """
        Validate that the file size is within acceptable limits.

        Args:
            file_size: Size of the file in bytes
            max_size: Upper limit in bytes

        Raises:
            ValidationError: If file is empty or exceeds max size
        """
        if file_size == 0:
            raise ValidationError("File is empty", "EMPTY_FILE")
        if file_size > max_size:
            raise ValidationError(
                f"File size ({file_size} bytes) exceeds maximum allowed size of {max_size} bytes.",
                "FILE_TOO_LARGE",
            )

    @staticmethod
    def validate_corpus_upload(
        filename: Optional[str],
        content_type: Optional[str],
        file_size: int,
        max_size: int = MAX_FILE_SIZE,
    ) -> None:
        """
        Perform all validations for a corpus upload, in order.

        Raises:
            ValidationError: If any validation fails
        """
        FileValidator.validate_file_provided(filename)
        FileValidator.validate_extension(filename)
        FileValidator.validate_content_type(content_type)
        FileValidator.validate_file_size(file_size, max_size)

    @staticmethod
    async def validate_and_read_fastapi_upload(
        file: UploadFile,
        max_size: int = MAX_FILE_SIZE,
    ) -> Tuple[bytes, int, str]:
        """
        Read and validate a FastAPI UploadFile holding a corpus.

        The caller is responsible for converting ValidationError to HTTPException.

        Returns:
            Tuple of (file_content, file_size, filename)

        Raises:
            ValidationError: If validation fails
        """
        if not file:
            raise ValidationError("No file provided", "MISSING_FILE")
        try:
            content = await file.read()
        except Exception as e:
            raise ValidationError(f"Failed to read file: {str(e)}", "FILE_READ_ERROR")

        FileValidator.validate_corpus_upload(
            filename=file.filename,
            content_type=file.content_type,
            file_size=len(content),
            max_size=max_size,
        )
        return content, len(content), file.filename

    @staticmethod
    async def read_metric_table_upload(file: UploadFile, max_size: int = MAX_FILE_SIZE) -> str:
        """
        Read an uploaded metric table as UTF-8 text.

        Raises:
            ValidationError: If the file is missing, empty, too large or not UTF-8
        """
        if not file:
            raise ValidationError("No metric table provided", "MISSING_FILE")
        content = await file.read()
        FileValidator.validate_file_size(len(content), max_size)
        try:
            return content.decode("utf-8")
        except UnicodeDecodeError:
            raise ValidationError("Metric table is not valid UTF-8", "INVALID_METRIC_TABLE")
