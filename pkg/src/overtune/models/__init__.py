"""Data models for the overtune toolkit."""

from .entities import (
    FIELD_ALIASES,
    RUN_KEY_FIELDS,
    CorpusFormat,
    HpoRun,
    MetricSpec,
    Orientation,
    ParsedCorpus,
    ParseStats,
    RawEvaluation,
    RunKey,
    StoredCorpus,
)
from .trajectory import (
    IncumbentTrace,
    OvertuningReport,
    RunMetrics,
    ScoreTrajectory,
    SeverityClass,
)

__all__ = [
    "FIELD_ALIASES",
    "RUN_KEY_FIELDS",
    "CorpusFormat",
    "HpoRun",
    "IncumbentTrace",
    "MetricSpec",
    "Orientation",
    "OvertuningReport",
    "ParsedCorpus",
    "ParseStats",
    "RawEvaluation",
    "RunKey",
    "RunMetrics",
    "ScoreTrajectory",
    "SeverityClass",
    "StoredCorpus",
]
