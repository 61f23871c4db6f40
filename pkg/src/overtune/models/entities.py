"""Corpus-level entities: run identity, metric declarations, parsed runs."""

from dataclasses import dataclass, field
from datetime import UTC, datetime
from enum import StrEnum
from typing import Mapping, Optional, Union
from uuid import UUID, uuid4

from .trajectory import ScoreTrajectory


class Orientation(StrEnum):
    """Direction in which a performance metric improves."""

    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class CorpusFormat(StrEnum):
    """On-disk formats understood by the ingest layer."""

    CSV = "csv"
    JSONL = "jsonl"


# Canonical RunKey attributes, in the column order of the CSV schema.
RUN_KEY_FIELDS = (
    "study",
    "learner",
    "dataset",
    "metric_name",
    "resampling",
    "dataset_size",
    "seed",
    "fold",
)

# "metric" is the column name used by the file schema.
FIELD_ALIASES = {"metric": "metric_name"}


@dataclass(frozen=True)
class MetricSpec:
    """Declared orientation of a performance metric."""

    name: str
    orientation: Orientation
    scale_note: str = ""

    @property
    def sign(self) -> float:
        """Multiplier that maps raw scores to lower-is-better."""
        return -1.0 if self.orientation == Orientation.MAXIMIZE else 1.0


@dataclass(frozen=True)
class RunKey:
    """Stratification metadata identifying one HPO run."""

    study: str
    learner: str
    dataset: str
    metric_name: str
    resampling: str
    dataset_size: Optional[int] = None
    seed: Optional[int] = None
    fold: Optional[int] = None
    extra: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        # Accept a plain mapping for convenience; store it as sorted pairs.
        extra = self.extra
        if isinstance(extra, Mapping):
            extra = extra.items()
        object.__setattr__(
            self, "extra", tuple(sorted((str(k), str(v)) for k, v in extra))
        )

    @property
    def extra_dict(self) -> dict[str, str]:
        return dict(self.extra)

    @property
    def identity(self) -> tuple:
        """Fields that must be unique within one corpus."""
        return (
            self.study,
            self.learner,
            self.dataset,
            self.metric_name,
            self.resampling,
            self.seed,
            self.fold,
            self.extra,
        )

    @property
    def sort_key(self) -> tuple:
        """Total order used for every deterministic reduction."""

        def opt(value: Optional[int]) -> tuple[int, int]:
            return (0, 0) if value is None else (1, value)

        return (
            self.study,
            self.learner,
            self.dataset,
            self.metric_name,
            self.resampling,
            opt(self.seed),
            opt(self.fold),
            self.extra,
            opt(self.dataset_size),
        )

    def has_field(self, name: str) -> bool:
        name = FIELD_ALIASES.get(name, name)
        return name in RUN_KEY_FIELDS or name in self.extra_dict

    def get(self, name: str) -> Union[str, int, None]:
        """
        Look up a canonical field or an extra column by name.

        Raises:
            KeyError: If the name is neither a RunKey field nor an extra column
        """
        name = FIELD_ALIASES.get(name, name)
        if name in RUN_KEY_FIELDS:
            return getattr(self, name)
        extra = self.extra_dict
        if name in extra:
            return extra[name]
        raise KeyError(name)

    def items_without(self, name: str) -> tuple[tuple[str, str], ...]:
        """All identifying (field, value) pairs except the named one, as text."""
        name = FIELD_ALIASES.get(name, name)
        pairs = [
            (f, "" if getattr(self, f) is None else str(getattr(self, f)))
            for f in RUN_KEY_FIELDS
            if f not in (name, "dataset_size")
        ]
        pairs.extend((k, v) for k, v in self.extra if k != name)
        return tuple(pairs)

    def label(self) -> str:
        """Compact human-readable form used in log and error messages."""
        parts = [self.study, self.learner, self.dataset, self.metric_name, self.resampling]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        if self.fold is not None:
            parts.append(f"fold={self.fold}")
        parts.extend(f"{k}={v}" for k, v in self.extra)
        return "/".join(parts)

    def extra_text(self) -> str:
        """Extra columns serialized as `k=v;k=v` for tabular output."""
        return ";".join(f"{k}={v}" for k, v in self.extra)


@dataclass(frozen=True)
class RawEvaluation:
    """One parsed input row before orientation and fold aggregation."""

    run: RunKey
    iteration: int
    val: Union[float, tuple[float, ...]]
    test: float
    source_row: int


@dataclass(frozen=True, eq=False)
class HpoRun:
    """One HPO trajectory with its stratification metadata."""

    key: RunKey
    trajectory: ScoreTrajectory
    source_rows: tuple[int, ...] = ()
    source: str = ""

    @property
    def length(self) -> int:
        return self.trajectory.length

    @property
    def first_row(self) -> Optional[int]:
        return self.source_rows[0] if self.source_rows else None


@dataclass(frozen=True)
class ParseStats:
    """Counters reported by corpus parsing."""

    runs_read: int = 0
    rows_read: int = 0
    rows_kept: int = 0
    rows_dropped: int = 0
    runs_rejected: int = 0
    runs_too_short: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def warning_count(self) -> int:
        return len(self.warnings)

    def merged(self, other: "ParseStats") -> "ParseStats":
        return ParseStats(
            runs_read=self.runs_read + other.runs_read,
            rows_read=self.rows_read + other.rows_read,
            rows_kept=self.rows_kept + other.rows_kept,
            rows_dropped=self.rows_dropped + other.rows_dropped,
            runs_rejected=self.runs_rejected + other.runs_rejected,
            runs_too_short=self.runs_too_short + other.runs_too_short,
            warnings=self.warnings + other.warnings,
        )


@dataclass(frozen=True, eq=False)
class ParsedCorpus:
    """Runs parsed from one or more files, ordered by RunKey."""

    runs: tuple[HpoRun, ...]
    stats: ParseStats = field(default_factory=ParseStats)

    def __len__(self) -> int:
        return len(self.runs)

    def __iter__(self):
        return iter(self.runs)


@dataclass
class StoredCorpus:
    """A parsed corpus held by the service between requests."""

    id: UUID
    filename: str
    upload_time: datetime
    format: CorpusFormat
    corpus: ParsedCorpus

    @classmethod
    def create(cls, filename: str, format: CorpusFormat, corpus: ParsedCorpus) -> "StoredCorpus":
        """Create a stored corpus with generated ID and current timestamp."""
        return cls(
            id=uuid4(),
            filename=filename,
            upload_time=datetime.now(UTC),
            format=format,
            corpus=corpus,
        )
