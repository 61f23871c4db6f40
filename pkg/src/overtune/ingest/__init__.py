"""Corpus ingest: metric tables, parsing, validation and serialization."""

from overtune.ingest.corpus_validator import (
    CorpusValidator,
    DuplicateRun,
    ValidationReport,
    validate_corpus,
)
from overtune.ingest.metric_table import (
    find_metric_table,
    metric_lookup,
    parse_metric_table,
    read_metric_table,
    write_metric_table,
)
from overtune.ingest.oracle_table import parse_extra_text, read_oracle_table
from overtune.ingest.parser import (
    REQUIRED_COLUMNS,
    SCHEMA_COLUMNS,
    aggregate_folds,
    detect_format,
    merge_corpora,
    parse_corpora,
    parse_corpus,
)
from overtune.ingest.serializer import serialize_corpus

__all__ = [
    "CorpusValidator",
    "DuplicateRun",
    "REQUIRED_COLUMNS",
    "SCHEMA_COLUMNS",
    "ValidationReport",
    "aggregate_folds",
    "detect_format",
    "find_metric_table",
    "merge_corpora",
    "metric_lookup",
    "parse_corpora",
    "parse_corpus",
    "parse_extra_text",
    "parse_metric_table",
    "read_metric_table",
    "read_oracle_table",
    "serialize_corpus",
    "validate_corpus",
]
