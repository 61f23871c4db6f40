"""Per-run metric pipeline shared by the CLI and the HTTP service."""

import logging
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from overtune.ingest import CorpusValidator, parse_corpus, parse_metric_table
from overtune.metrics import DEFAULT_EPSILON, compute_report
from overtune.models import CorpusFormat, HpoRun, RunMetrics, StoredCorpus
from overtune.store import CorpusRepository

LOGGER = logging.getLogger(__name__)


class CorpusProcessor:
    """Turns parsed runs into per-run reports and handles uploaded corpora."""

    @staticmethod
    def compute_metrics(
        runs: Sequence[HpoRun],
        epsilon: float = DEFAULT_EPSILON,
        threads: int = 1,
        oracle_min_test: Optional[float] = None,
        oracles: Optional[Mapping[tuple, float]] = None,
    ) -> list[RunMetrics]:
        """
        Compute the overtuning report of every run.

        Runs are processed in parallel and returned in input order, so the
        result does not depend on ``threads``.

        Args:
            runs: Parsed runs
            epsilon: Improvement threshold for relative overtuning
            threads: Worker threads
            oracle_min_test: Optional corpus-wide best achievable test error
            oracles: Optional per-run oracle minima keyed by RunKey.identity;
                a run found here uses its own value instead of oracle_min_test

        Raises:
            MetricError: If the oracle exceeds a run's observed minimum
            ParameterError: If epsilon is not positive
        """
        start = time.perf_counter()

        def one(run: HpoRun) -> RunMetrics:
            oracle = oracle_min_test
            if oracles is not None:
                oracle = oracles.get(run.key.identity, oracle_min_test)
            return RunMetrics(
                key=run.key,
                report=compute_report(run.trajectory, epsilon, oracle_min_test=oracle),
            )

        with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
            results = list(executor.map(one, runs))
        LOGGER.info(
            "computed metrics for %d runs in %.1f ms",
            len(results),
            (time.perf_counter() - start) * 1000,
        )
        return results

    @staticmethod
    async def process_upload(
        filename: str,
        content: bytes,
        metric_table_text: str,
        repository: CorpusRepository,
        min_length: int = 1,
    ) -> dict[str, Any]:
        """
        Parse, validate and store an uploaded corpus.

        The upload is written to a temporary file with its original suffix
        so the file-based parser can infer the format.

        Args:
            filename: Name of the uploaded file (.csv or .jsonl)
            content: Raw file contents
            metric_table_text: Metric table contents
            repository: Where the parsed corpus is kept
            min_length: Minimum kept evaluations per run

        Returns:
            Dictionary with corpus metadata for the response

        Raises:
            ValidationError: If the corpus or metric table is invalid
        """
        upload_start_time = time.perf_counter()
        specs = parse_metric_table(metric_table_text, source="metric_table")
        suffix = Path(filename).suffix.lower()

        temp_path = None
        try:
            with tempfile.NamedTemporaryFile(
                mode="wb",
                suffix=suffix,
                prefix="overtune_",
                delete=False,
            ) as temp_file:
                temp_file.write(content)
                temp_path = temp_file.name
            corpus = parse_corpus(temp_path, metric_table=specs, min_length=min_length)
        finally:
            if temp_path and Path(temp_path).exists():
                Path(temp_path).unlink()

        CorpusValidator.validate_corpus(corpus.runs)
        stored = StoredCorpus.create(filename=filename, format=CorpusFormat(suffix.lstrip(".")), corpus=corpus)
        await repository.store_corpus(stored)

        LOGGER.info(
            "stored corpus %s (%s, %d runs) in %.1f ms",
            stored.id,
            filename,
            len(corpus),
            (time.perf_counter() - upload_start_time) * 1000,
        )
        return {
            "corpus_id": str(stored.id),
            "filename": filename,
            "format": stored.format.value,
            "runs": len(corpus),
            "rows_read": corpus.stats.rows_read,
            "rows_dropped": corpus.stats.rows_dropped,
            "upload_time": stored.upload_time.isoformat(),
        }
