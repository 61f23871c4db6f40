"""FastAPI web server for corpus overtuning analysis."""

from typing import Annotated, Optional
from uuid import UUID

from fastapi import FastAPI, File, Form, HTTPException, Query, UploadFile, status

from overtune.analysis import build_ecdf
from overtune.config import Settings
from overtune.errors import MetricError, OvertuneError, ParameterError, ValidationError
from overtune.models import StoredCorpus
from overtune.processing import CorpusProcessor
from overtune.reporting import json_value
from overtune.reporting.rows import ECDF_SUMMARY_COLUMNS, ecdf_rows, ecdf_summary_row, metrics_row
from overtune.store import CorpusRepository, InMemoryCorpusRepository
from overtune.validation import FileValidator

# Configuration
VERSION = "0.1.0"

app = FastAPI(
    title="Overtune Service",
    description="Upload HPO run corpora and query their overtuning metrics",
    version=VERSION,
)

# Singleton: one repository for the lifetime of the application so corpora
# persist across requests
_repository: Optional[CorpusRepository] = None


def get_repository() -> CorpusRepository:
    """Shared corpus repository."""
    global _repository
    if _repository is None:
        _repository = InMemoryCorpusRepository()
    return _repository


def _error(status_code: int, error: OvertuneError) -> HTTPException:
    return HTTPException(
        status_code=status_code,
        detail={
            "error": error.message,
            "code": error.code,
        },
    )


async def _require_corpus(corpus_id: UUID) -> StoredCorpus:
    stored = await get_repository().get_corpus(corpus_id)
    if stored is None:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail={
                "error": f"Corpus {corpus_id} not found",
                "code": "CORPUS_NOT_FOUND",
            },
        )
    return stored


def _json_row(row: dict) -> dict:
    return {name: json_value(value) for name, value in row.items()}


@app.get("/health")
async def health_check():
    """Health check endpoint for monitoring."""
    return {
        "status": "healthy",
        "version": VERSION,
    }


@app.post("/corpora")
async def upload_corpus(
    file: Annotated[UploadFile, File(description="Corpus file (.csv or .jsonl)")],
    metric_table: Annotated[UploadFile, File(description="Metric table: lines of name,minimize|maximize")],
    min_length: Annotated[int, Form(ge=1)] = 1,
):
    """
    Upload a corpus for analysis.

    - Validates file type (.csv or .jsonl) and size
    - Parses runs with the declared metric orientations
    - Rejects duplicated run keys
    - Stores the parsed corpus and returns its metadata
    """
    max_size = Settings.from_env().max_upload_bytes
    try:
        content, _, filename = await FileValidator.validate_and_read_fastapi_upload(file, max_size)
        table_text = await FileValidator.read_metric_table_upload(metric_table, max_size)
        return await CorpusProcessor.process_upload(
            filename=filename,
            content=content,
            metric_table_text=table_text,
            repository=get_repository(),
            min_length=min_length,
        )
    except ValidationError as e:
        # Map validation errors to appropriate HTTP status codes
        status_code = status.HTTP_400_BAD_REQUEST
        if e.code == "FILE_TOO_LARGE":
            status_code = status.HTTP_413_CONTENT_TOO_LARGE
        raise _error(status_code, e)
    except (MetricError, ParameterError) as e:
        raise _error(status.HTTP_400_BAD_REQUEST, e)


@app.get("/corpora")
async def list_corpora(
    limit: Annotated[int, Query(ge=1, le=100)] = 20,
    offset: Annotated[int, Query(ge=0)] = 0,
):
    """
    List stored corpora, newest first, with pagination metadata.
    """
    repository = get_repository()
    corpora = await repository.list_corpora(limit=limit, offset=offset)
    total_count = await repository.count_corpora()
    return {
        "corpora": [
            {
                "corpus_id": str(c.id),
                "filename": c.filename,
                "format": c.format.value,
                "runs": len(c.corpus),
                "upload_time": c.upload_time.isoformat(),
            }
            for c in corpora
        ],
        "pagination": {
            "limit": limit,
            "offset": offset,
            "total": total_count,
            "returned": len(corpora),
        },
    }


@app.get("/corpora/{corpus_id}/metrics")
async def get_corpus_metrics(
    corpus_id: UUID,
    epsilon: Annotated[Optional[float], Query(gt=0)] = None,
):
    """
    Final per-run metrics of a stored corpus (same columns as metrics.csv).

    Raises:
        404: Corpus not found
    """
    stored = await _require_corpus(corpus_id)
    settings = Settings.from_env()
    results = CorpusProcessor.compute_metrics(
        stored.corpus.runs,
        epsilon=settings.epsilon if epsilon is None else epsilon,
        threads=settings.threads,
    )
    return {
        "corpus_id": str(stored.id),
        "runs": [_json_row(metrics_row(r)) for r in results],
    }


@app.get("/corpora/{corpus_id}/ecdf")
async def get_corpus_ecdf(
    corpus_id: UUID,
    epsilon: Annotated[Optional[float], Query(gt=0)] = None,
    at: Annotated[str, Query(description="'final' or an iteration number")] = "final",
):
    """
    Pooled relative overtuning ECDF of a stored corpus.

    Raises:
        400: Invalid time point
        404: Corpus not found
    """
    stored = await _require_corpus(corpus_id)
    settings = Settings.from_env()
    epsilon = settings.epsilon if epsilon is None else epsilon
    try:
        time_point = "final" if at == "final" else int(at)
    except ValueError:
        raise _error(
            status.HTTP_400_BAD_REQUEST,
            ParameterError(f"time point must be 'final' or an iteration, got {at!r}", "INVALID_TIME_POINT"),
        )
    results = CorpusProcessor.compute_metrics(stored.corpus.runs, epsilon=epsilon, threads=settings.threads)
    try:
        summary = build_ecdf([r.report for r in results], at=time_point, epsilon=epsilon)
    except OvertuneError as e:
        raise _error(status.HTTP_400_BAD_REQUEST, e)
    summary_row = ecdf_summary_row(summary)
    return {
        "corpus_id": str(stored.id),
        "summary": {name: json_value(summary_row[name]) for name in ECDF_SUMMARY_COLUMNS},
        "points": [_json_row(row) for row in ecdf_rows(summary)],
    }
