"""Tests for FastAPI endpoints."""

import io

import pytest
from httpx import ASGITransport, AsyncClient

from overtune import app as app_module
from overtune.app import app
from overtune.store import InMemoryCorpusRepository

METRIC_TABLE = b"error,minimize\naccuracy,maximize\n"


@pytest.fixture(autouse=True)
def fresh_repository(monkeypatch):
    """Give every test its own empty repository."""
    monkeypatch.setattr(app_module, "_repository", InMemoryCorpusRepository())


@pytest.fixture
async def client():
    """Create an async HTTP client for testing."""
    async with AsyncClient(
        transport=ASGITransport(app=app),
        base_url="http://test"
    ) as ac:
        yield ac


def _files(content: bytes, filename: str = "runs.csv", content_type: str = "text/csv") -> dict:
    return {
        "file": (filename, io.BytesIO(content), content_type),
        "metric_table": ("metric_table.txt", io.BytesIO(METRIC_TABLE), "text/plain"),
    }


async def _upload_fixture(client, fixtures_dir) -> str:
    content = (fixtures_dir / "ecdf_corpus.csv").read_bytes()
    response = await client.post("/corpora", files=_files(content, "ecdf_corpus.csv"))
    assert response.status_code == 200
    return response.json()["corpus_id"]


@pytest.mark.asyncio
async def test_health_endpoint(client):
    """Test the health check endpoint."""
    response = await client.get("/health")

    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert data["version"] == "0.1.0"


@pytest.mark.asyncio
async def test_upload_valid_corpus(client, fixtures_dir):
    """Test uploading a valid corpus."""
    content = (fixtures_dir / "ecdf_corpus.csv").read_bytes()

    response = await client.post("/corpora", files=_files(content, "ecdf_corpus.csv"))

    assert response.status_code == 200
    data = response.json()
    assert "corpus_id" in data
    assert data["filename"] == "ecdf_corpus.csv"
    assert data["format"] == "csv"
    assert data["runs"] == 4
    assert data["rows_read"] == 10
    assert data["rows_dropped"] == 0
    assert "upload_time" in data


@pytest.mark.asyncio
async def test_upload_jsonl_corpus(client):
    """Test uploading a JSON lines corpus with a maximized metric."""
    content = (
        b'{"study":"s","learner":"l","dataset":"d","metric":"accuracy","resampling":"holdout",'
        b'"seed":1,"iteration":1,"val":0.5,"test":0.5}\n'
    )

    response = await client.post("/corpora", files=_files(content, "runs.jsonl", "application/x-ndjson"))

    assert response.status_code == 200
    assert response.json()["format"] == "jsonl"


@pytest.mark.asyncio
async def test_upload_no_file(client):
    """Test upload endpoint with no file."""
    response = await client.post("/corpora")

    assert response.status_code == 422  # FastAPI validation error


@pytest.mark.asyncio
async def test_upload_empty_file(client):
    """Test uploading an empty file."""
    response = await client.post("/corpora", files=_files(b""))

    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "EMPTY_FILE"


@pytest.mark.asyncio
async def test_upload_invalid_extension(client):
    """Test uploading a file that is not a corpus."""
    response = await client.post("/corpora", files=_files(b"%PDF-1.4", "report.pdf", "application/pdf"))

    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "INVALID_FILE_TYPE"


@pytest.mark.asyncio
async def test_upload_file_too_large(client, monkeypatch):
    """Test uploading a file that exceeds the configured size limit."""
    monkeypatch.setenv("OVERTUNE_MAX_UPLOAD_BYTES", "64")

    response = await client.post("/corpora", files=_files(b"x" * 65))

    assert response.status_code == 413
    assert response.json()["detail"]["code"] == "FILE_TOO_LARGE"


@pytest.mark.asyncio
async def test_upload_unknown_metric(client):
    """Test that a metric missing from the metric table is rejected."""
    content = (
        b"study,learner,dataset,metric,resampling,iteration,val,test\n"
        b"s,l,d,auc,holdout,1,0.5,0.5\n"
    )

    response = await client.post("/corpora", files=_files(content))

    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "UNKNOWN_METRIC"


@pytest.mark.asyncio
async def test_upload_duplicate_runs(client, fixtures_dir):
    """Test that duplicated run keys are rejected and nothing is stored."""
    content = (fixtures_dir / "duplicate_corpus.csv").read_bytes()

    response = await client.post("/corpora", files=_files(content, "duplicate_corpus.csv"))

    assert response.status_code == 400
    assert response.json()["detail"]["code"] == "DUPLICATE_RUN_KEY"
    listing = await client.get("/corpora")
    assert listing.json()["pagination"]["total"] == 0


@pytest.mark.asyncio
async def test_openapi_docs_available(client):
    """Test that the OpenAPI schema lists the corpus endpoints."""
    response = await client.get("/openapi.json")

    assert response.status_code == 200
    assert "/corpora/{corpus_id}/ecdf" in response.json()["paths"]


@pytest.mark.asyncio
async def test_list_corpora_with_pagination(client, fixtures_dir):
    """Test listing uploaded corpora page by page."""
    for _ in range(3):
        await _upload_fixture(client, fixtures_dir)

    response = await client.get("/corpora", params={"limit": 2, "offset": 0})

    assert response.status_code == 200
    data = response.json()
    assert len(data["corpora"]) == 2
    assert data["pagination"] == {"limit": 2, "offset": 0, "total": 3, "returned": 2}
    assert data["corpora"][0]["runs"] == 4


@pytest.mark.asyncio
async def test_list_corpora_with_invalid_pagination(client):
    """Test that out-of-range pagination parameters are rejected."""
    response = await client.get("/corpora", params={"limit": 0})

    assert response.status_code == 422


@pytest.mark.asyncio
async def test_get_metrics(client, fixtures_dir):
    """Test per-run metrics of an uploaded corpus."""
    corpus_id = await _upload_fixture(client, fixtures_dir)

    response = await client.get(f"/corpora/{corpus_id}/metrics")

    assert response.status_code == 200
    data = response.json()
    assert data["corpus_id"] == corpus_id
    assert [r["final_rel_ot"] for r in data["runs"]] == [0.0, 0.0, 0.5, 1.5]
    assert data["runs"][0]["final_oracle_tr"] is None
    assert data["runs"][3]["final_ot"] == 0.375


@pytest.mark.asyncio
async def test_get_metrics_for_nonexistent_corpus(client):
    """Test metrics of a corpus that doesn't exist."""
    response = await client.get("/corpora/123e4567-e89b-12d3-a456-426614174000/metrics")

    assert response.status_code == 404
    assert response.json()["detail"]["code"] == "CORPUS_NOT_FOUND"


@pytest.mark.asyncio
async def test_get_ecdf(client, fixtures_dir):
    """Test the pooled ECDF of an uploaded corpus."""
    corpus_id = await _upload_fixture(client, fixtures_dir)

    response = await client.get(f"/corpora/{corpus_id}/ecdf")

    assert response.status_code == 200
    data = response.json()
    assert data["summary"]["fraction_severe"] == 0.25
    assert data["summary"]["at"] == "final"
    assert data["points"] == [
        {"value": 0.0, "F": 0.5},
        {"value": 0.5, "F": 0.75},
        {"value": 1.5, "F": 1.0},
    ]


@pytest.mark.asyncio
async def test_get_ecdf_with_epsilon_and_iteration(client, fixtures_dir):
    """Test the ECDF at a fixed iteration and threshold."""
    corpus_id = await _upload_fixture(client, fixtures_dir)

    response = await client.get(f"/corpora/{corpus_id}/ecdf", params={"at": "2", "epsilon": 0.2})

    assert response.status_code == 200
    summary = response.json()["summary"]
    assert summary["n_filtered"] == 2
    assert summary["epsilon"] == 0.2


@pytest.mark.asyncio
async def test_get_ecdf_invalid_time_point(client, fixtures_dir):
    """Test that a malformed or out-of-range time point is rejected."""
    corpus_id = await _upload_fixture(client, fixtures_dir)

    malformed = await client.get(f"/corpora/{corpus_id}/ecdf", params={"at": "last"})
    too_late = await client.get(f"/corpora/{corpus_id}/ecdf", params={"at": "9"})

    assert malformed.status_code == 400
    assert malformed.json()["detail"]["code"] == "INVALID_TIME_POINT"
    assert too_late.status_code == 400
    assert too_late.json()["detail"]["code"] == "INVALID_TIME_POINT"
