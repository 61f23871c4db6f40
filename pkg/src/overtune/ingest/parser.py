"""Parsing of HPO evaluation records into lower-is-better score trajectories."""

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from overtune.errors import ValidationError
from overtune.models import (
    CorpusFormat,
    HpoRun,
    MetricSpec,
    ParsedCorpus,
    ParseStats,
    RawEvaluation,
    RunKey,
    ScoreTrajectory,
)

from .metric_table import metric_lookup

LOGGER = logging.getLogger(__name__)

SCHEMA_COLUMNS = (
    "study",
    "learner",
    "dataset",
    "metric",
    "resampling",
    "dataset_size",
    "seed",
    "fold",
    "iteration",
    "val",
    "test",
)
REQUIRED_COLUMNS = ("study", "learner", "dataset", "metric", "resampling", "iteration", "val", "test")
FOLD_SEPARATOR = ";"
AGGREGATORS = ("mean",)

FORMAT_SUFFIXES = {
    ".csv": CorpusFormat.CSV,
    ".jsonl": CorpusFormat.JSONL,
    ".ndjson": CorpusFormat.JSONL,
}


def aggregate_folds(fold_scores: Sequence[float], aggregator: str = "mean") -> float:
    """
    Aggregate per-split validation scores into one estimate.

    Args:
        fold_scores: Scores of the individual resampling splits
        aggregator: Aggregation rule; only "mean" is supported

    Returns:
        Aggregated score

    Raises:
        ValidationError: If the list is empty or the aggregator is unknown
    """
    if aggregator not in AGGREGATORS:
        raise ValidationError(f"unknown fold aggregator {aggregator!r}", "UNKNOWN_AGGREGATOR")
    if len(fold_scores) == 0:
        raise ValidationError("cannot aggregate an empty fold list", "EMPTY_FOLDS")
    return float(np.mean(np.asarray(fold_scores, dtype=np.float64)))


def detect_format(path: Union[str, Path]) -> CorpusFormat:
    """
    Infer the corpus format from the file suffix.

    Raises:
        ValidationError: If the suffix is not recognized
    """
    suffix = Path(path).suffix.lower()
    if suffix not in FORMAT_SUFFIXES:
        raise ValidationError(
            f"cannot infer corpus format from {Path(path).name!r}; expected .csv or .jsonl",
            "UNSUPPORTED_FORMAT",
        )
    return FORMAT_SUFFIXES[suffix]


class _StatsBuilder:
    """Mutable counters collected while parsing one file."""

    def __init__(self) -> None:
        self.runs_read = 0
        self.rows_read = 0
        self.rows_kept = 0
        self.rows_dropped = 0
        self.runs_rejected = 0
        self.runs_too_short = 0
        self.warnings: list[str] = []

    def warn(self, message: str) -> None:
        LOGGER.warning(message)
        self.warnings.append(message)

    def freeze(self) -> ParseStats:
        return ParseStats(
            runs_read=self.runs_read,
            rows_read=self.rows_read,
            rows_kept=self.rows_kept,
            rows_dropped=self.rows_dropped,
            runs_rejected=self.runs_rejected,
            runs_too_short=self.runs_too_short,
            warnings=tuple(self.warnings),
        )


def _iter_records(path: Path, fmt: CorpusFormat) -> Iterator[tuple[int, Mapping[str, Any]]]:
    """Yield (1-based row number, record) pairs from a corpus file."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        if fmt == CorpusFormat.CSV:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None:
                raise ValidationError(f"{path}: missing CSV header", "MISSING_FIELD")
            missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
            if missing:
                raise ValidationError(
                    f"{path}: CSV header lacks required columns {', '.join(missing)}",
                    "MISSING_FIELD",
                )
            for row_no, row in enumerate(reader, start=1):
                yield row_no, row
        else:
            row_no = 0
            for line in handle:
                if not line.strip():
                    continue
                row_no += 1
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as e:
                    raise ValidationError(f"{path} row {row_no}: invalid JSON ({e.msg})", "INVALID_RECORD")
                if not isinstance(record, dict):
                    raise ValidationError(f"{path} row {row_no}: expected a JSON object", "INVALID_RECORD")
                yield row_no, record


def text_field(record: Mapping[str, Any], name: str, where: str) -> str:
    if name not in record or record[name] is None:
        raise ValidationError(f"{where}: missing field {name!r}", "MISSING_FIELD")
    return str(record[name]).strip()


def optional_int_field(record: Mapping[str, Any], name: str, where: str) -> Optional[int]:
    value = record.get(name)
    if value is None or (isinstance(value, str) and not value.strip()):
        return None
    if isinstance(value, bool):
        raise ValidationError(f"{where}: field {name!r} must be an integer", "INVALID_NUMBER")
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError:
        raise ValidationError(f"{where}: field {name!r} must be an integer, got {value!r}", "INVALID_NUMBER")


def float_field(value: Any, name: str, where: str) -> float:
    """A float; a missing value (None or blank) is NaN."""
    if value is None:
        return math.nan
    if isinstance(value, bool):
        raise ValidationError(f"{where}: field {name!r} must be numeric", "INVALID_NUMBER")
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip()
    if not text:
        return math.nan
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"{where}: field {name!r} is not a number: {value!r}", "INVALID_NUMBER")


def _score(value: Any, name: str, where: str) -> Union[float, tuple[float, ...]]:
    """A scalar score or a per-fold list. Missing values parse as NaN."""
    if value is None:
        return math.nan
    if isinstance(value, list):
        return tuple(float_field(v, name, where) for v in value)
    if isinstance(value, str) and FOLD_SEPARATOR in value:
        return tuple(float_field(v, name, where) for v in value.split(FOLD_SEPARATOR))
    return float_field(value, name, where)


def _to_evaluation(record: Mapping[str, Any], row_no: int, source: str) -> RawEvaluation:
    where = f"{source} row {row_no}"
    iteration = optional_int_field(record, "iteration", where)
    if iteration is None or iteration < 1:
        raise ValidationError(f"{where}: iteration must be a positive integer", "INVALID_NUMBER")
    known = set(SCHEMA_COLUMNS)
    extra = {
        str(k): str(v).strip()
        for k, v in record.items()
        if k is not None and k not in known and v is not None and str(v).strip()
    }
    key = RunKey(
        study=text_field(record, "study", where),
        learner=text_field(record, "learner", where),
        dataset=text_field(record, "dataset", where),
        metric_name=text_field(record, "metric", where),
        resampling=text_field(record, "resampling", where),
        dataset_size=optional_int_field(record, "dataset_size", where),
        seed=optional_int_field(record, "seed", where),
        fold=optional_int_field(record, "fold", where),
        extra=extra,
    )
    return RawEvaluation(
        run=key,
        iteration=iteration,
        val=_score(record.get("val"), "val", where),
        test=float_field(record.get("test"), "test", where),
        source_row=row_no,
    )


def _oriented(evaluation: RawEvaluation, spec: MetricSpec, aggregator: str) -> tuple[float, float]:
    """Validation and test score in lower-is-better orientation."""
    sign = spec.sign
    if isinstance(evaluation.val, tuple):
        val = aggregate_folds([sign * v for v in evaluation.val], aggregator)
    else:
        val = sign * evaluation.val
    return val, sign * evaluation.test


def _split_duplicates(evaluations: list[RawEvaluation]) -> list[list[RawEvaluation]]:
    """
    Separate rows of one key into run copies.

    A row whose iteration was already seen for the key starts (or joins) a
    further copy, so duplicated runs survive parsing and can be reported.
    """
    copies: list[tuple[set[int], list[RawEvaluation]]] = []
    for evaluation in evaluations:
        for seen, rows in copies:
            if evaluation.iteration not in seen:
                seen.add(evaluation.iteration)
                rows.append(evaluation)
                break
        else:
            copies.append(({evaluation.iteration}, [evaluation]))
    return [rows for _, rows in copies]


def _build_run(
    key: RunKey,
    rows: list[RawEvaluation],
    spec: MetricSpec,
    source: str,
    min_length: int,
    aggregator: str,
    stats: _StatsBuilder,
) -> Optional[HpoRun]:
    rows = sorted(rows, key=lambda r: r.iteration)
    iterations = [r.iteration for r in rows]
    if iterations != list(range(1, len(rows) + 1)):
        raise ValidationError(
            f"{source}: run {key.label()} has non-contiguous iterations "
            f"(expected 1..{len(rows)}, found {iterations[0]}..{iterations[-1]})",
            "NON_CONTIGUOUS_ITERATIONS",
        )
    stats.runs_read += 1

    vals: list[float] = []
    tests: list[float] = []
    kept_rows: list[int] = []
    for row in rows:
        val, test = _oriented(row, spec, aggregator)
        if math.isfinite(val) and math.isfinite(test):
            vals.append(val)
            tests.append(test)
            kept_rows.append(row.source_row)
            continue
        if row.iteration == 1:
            stats.runs_rejected += 1
            stats.rows_dropped += len(rows)
            stats.warn(
                f"{source} row {row.source_row}: non-finite score at iteration 1, "
                f"run {key.label()} rejected"
            )
            return None
        stats.rows_dropped += 1
        stats.warn(
            f"{source} row {row.source_row}: non-finite score at iteration {row.iteration} "
            f"of run {key.label()}, row dropped"
        )

    if len(vals) < min_length:
        stats.runs_too_short += 1
        stats.rows_dropped += len(vals)
        LOGGER.info("run %s has %d evaluations (< %d), excluded", key.label(), len(vals), min_length)
        return None

    stats.rows_kept += len(vals)
    return HpoRun(
        key=key,
        trajectory=ScoreTrajectory(val=vals, test=tests),
        source_rows=tuple(kept_rows),
        source=source,
    )


def _run_order(run: HpoRun) -> tuple:
    return (run.key.sort_key, run.source, run.first_row or 0)


def parse_corpus(
    path: Union[str, Path],
    fmt: Optional[Union[CorpusFormat, str]] = None,
    metric_table: Sequence[MetricSpec] = (),
    min_length: int = 1,
    aggregator: str = "mean",
) -> ParsedCorpus:
    """
    Parse a corpus file into one trajectory per run.

    Maximized metrics are negated so that every trajectory is
    lower-is-better. Per-fold validation scores are aggregated. Rows with a
    non-finite score are dropped with a warning, except at iteration 1
    where the whole run is rejected.

    Args:
        path: CSV or JSONL file following the canonical schema
        fmt: File format; inferred from the suffix when omitted
        metric_table: Declared orientation of every metric in the file
        min_length: Runs with fewer kept evaluations are excluded
        aggregator: Fold aggregation rule

    Returns:
        Parsed runs ordered by RunKey, with parse statistics

    Raises:
        FileNotFoundError: If the file does not exist
        ValidationError: On schema violations, unknown metrics or
            non-contiguous iterations
    """
    path = Path(path)
    fmt = CorpusFormat(fmt) if fmt is not None else detect_format(path)
    specs = metric_lookup(metric_table)
    source = str(path)
    stats = _StatsBuilder()

    grouped: dict[RunKey, list[RawEvaluation]] = {}
    try:
        for row_no, record in _iter_records(path, fmt):
            stats.rows_read += 1
            evaluation = _to_evaluation(record, row_no, source)
            if evaluation.run.metric_name not in specs:
                raise ValidationError(
                    f"{source} row {row_no}: unknown metric {evaluation.run.metric_name!r} "
                    "(not declared in the metric table)",
                    "UNKNOWN_METRIC",
                )
            grouped.setdefault(evaluation.run, []).append(evaluation)
    except UnicodeDecodeError:
        raise ValidationError(f"{source}: file is not valid UTF-8", "INVALID_RECORD")

    runs: list[HpoRun] = []
    for key, evaluations in grouped.items():
        for rows in _split_duplicates(evaluations):
            run = _build_run(key, rows, specs[key.metric_name], source, min_length, aggregator, stats)
            if run is not None:
                runs.append(run)

    runs.sort(key=_run_order)
    frozen = stats.freeze()
    LOGGER.info(
        "parsed %s: %d runs, %d rows read, %d dropped",
        source,
        len(runs),
        frozen.rows_read,
        frozen.rows_dropped,
    )
    return ParsedCorpus(runs=tuple(runs), stats=frozen)


def merge_corpora(corpora: Sequence[ParsedCorpus]) -> ParsedCorpus:
    """Combine parsed corpora into one, ordered by RunKey."""
    stats = ParseStats()
    runs: list[HpoRun] = []
    for corpus in corpora:
        runs.extend(corpus.runs)
        stats = stats.merged(corpus.stats)
    runs.sort(key=_run_order)
    return ParsedCorpus(runs=tuple(runs), stats=stats)


def parse_corpora(
    paths: Sequence[Union[str, Path]],
    fmt: Optional[Union[CorpusFormat, str]] = None,
    metric_table: Sequence[MetricSpec] = (),
    min_length: int = 1,
    threads: int = 1,
) -> ParsedCorpus:
    """Parse several files concurrently (one file per worker) and merge them."""
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        corpora = list(
            executor.map(
                lambda p: parse_corpus(p, fmt, metric_table, min_length=min_length),
                paths,
            )
        )
    return merge_corpora(corpora)
