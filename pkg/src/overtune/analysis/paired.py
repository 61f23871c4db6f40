"""Paired-protocol comparison of runs that differ in one factor."""

import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from overtune.errors import ParameterError, ValidationError
from overtune.models import RunKey, RunMetrics


@dataclass(frozen=True)
class QuadrantCounts:
    """Sign quadrants of (x, y) pairs; points with a zero coordinate are on an axis."""

    both_positive: int = 0
    x_negative_y_positive: int = 0
    both_negative: int = 0
    x_positive_y_negative: int = 0
    on_axis: int = 0


def quadrant_counts(x: Sequence[float], y: Sequence[float]) -> QuadrantCounts:
    counts = {"pp": 0, "np": 0, "nn": 0, "pn": 0, "axis": 0}
    for a, b in zip(x, y):
        if a == 0 or b == 0:
            counts["axis"] += 1
        elif a > 0 and b > 0:
            counts["pp"] += 1
        elif a < 0 < b:
            counts["np"] += 1
        elif a < 0 and b < 0:
            counts["nn"] += 1
        else:
            counts["pn"] += 1
    return QuadrantCounts(
        both_positive=counts["pp"],
        x_negative_y_positive=counts["np"],
        both_negative=counts["nn"],
        x_positive_y_negative=counts["pn"],
        on_axis=counts["axis"],
    )


def pearson_correlation(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample correlation; NaN with fewer than two points or a constant series."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return math.nan
    return float(np.corrcoef(x, y)[0, 1])


@dataclass(frozen=True)
class PairedDelta:
    """Differences (B minus A) between the final incumbents of one matched pair."""

    pairing_key: tuple[tuple[str, str], ...]
    factor: str
    key_a: RunKey
    key_b: RunKey
    delta_final_test: float
    delta_final_ot: float
    delta_final_of: float
    delta_final_tr: float

    @property
    def level_a(self) -> Any:
        return self.key_a.get(self.factor) if self.key_a.has_field(self.factor) else None

    @property
    def level_b(self) -> Any:
        return self.key_b.get(self.factor) if self.key_b.has_field(self.factor) else None


@dataclass(frozen=True)
class PairedSummary:
    n_pairs: int
    n_unmatched_a: int
    n_unmatched_b: int
    n_ambiguous: int
    mean_delta_test: float
    mean_delta_ot: float
    mean_delta_of: float
    mean_delta_tr: float
    fraction_positive: float
    fraction_negative: float
    quadrants: QuadrantCounts
    correlation: float


@dataclass(frozen=True)
class PairedComparison:
    deltas: tuple[PairedDelta, ...]
    summary: PairedSummary


def _index(results: Sequence[RunMetrics], factor: str) -> dict[tuple, list[RunMetrics]]:
    index: dict[tuple, list[RunMetrics]] = {}
    for result in sorted(results, key=lambda r: r.key.sort_key):
        index.setdefault(result.key.items_without(factor), []).append(result)
    return index


def paired_compare(
    a: Sequence[RunMetrics],
    b: Sequence[RunMetrics],
    factor: str,
) -> PairedComparison:
    """
    Match runs of A and B on every identifying field except ``factor``.

    Runs without a partner are counted as unmatched; pairing keys held by
    more than one run on either side are counted as ambiguous. Both are
    excluded from the deltas.

    Raises:
        ValidationError: If no pair can be formed (NO_MATCHED_PAIRS)
    """
    index_a = _index(a, factor)
    index_b = _index(b, factor)

    deltas: list[PairedDelta] = []
    n_ambiguous = 0
    for pairing_key in sorted(index_a.keys() & index_b.keys()):
        side_a, side_b = index_a[pairing_key], index_b[pairing_key]
        if len(side_a) != 1 or len(side_b) != 1:
            n_ambiguous += len(side_a) + len(side_b)
            continue
        ra, rb = side_a[0].report, side_b[0].report
        deltas.append(
            PairedDelta(
                pairing_key=pairing_key,
                factor=factor,
                key_a=side_a[0].key,
                key_b=side_b[0].key,
                delta_final_test=rb.final_incumbent_test - ra.final_incumbent_test,
                delta_final_ot=rb.final_ot - ra.final_ot,
                delta_final_of=rb.final_of - ra.final_of,
                delta_final_tr=rb.final_tr - ra.final_tr,
            )
        )
    if not deltas:
        raise ValidationError(f"no matched pairs on factor {factor!r}", "NO_MATCHED_PAIRS")

    n_unmatched_a = sum(len(v) for k, v in index_a.items() if k not in index_b)
    n_unmatched_b = sum(len(v) for k, v in index_b.items() if k not in index_a)
    d_test = [d.delta_final_test for d in deltas]
    d_ot = [d.delta_final_ot for d in deltas]
    summary = PairedSummary(
        n_pairs=len(deltas),
        n_unmatched_a=n_unmatched_a,
        n_unmatched_b=n_unmatched_b,
        n_ambiguous=n_ambiguous,
        mean_delta_test=float(np.mean(d_test)),
        mean_delta_ot=float(np.mean(d_ot)),
        mean_delta_of=float(np.mean([d.delta_final_of for d in deltas])),
        mean_delta_tr=float(np.mean([d.delta_final_tr for d in deltas])),
        fraction_positive=sum(1 for v in d_test if v > 0) / len(deltas),
        fraction_negative=sum(1 for v in d_test if v < 0) / len(deltas),
        quadrants=quadrant_counts(d_ot, d_test),
        correlation=pearson_correlation(d_ot, d_test),
    )
    return PairedComparison(deltas=tuple(deltas), summary=summary)


def split_by_level(
    results: Sequence[RunMetrics],
    factor: str,
    level_a: str,
    level_b: str,
) -> tuple[list[RunMetrics], list[RunMetrics]]:
    """
    Select the A and B sides of a comparison from one corpus by factor level.

    Levels are compared as text. Runs at other levels go to neither side.

    Raises:
        ParameterError: If no run carries the factor (UNKNOWN_FIELD)
    """
    if not any(r.key.has_field(factor) for r in results):
        raise ParameterError(f"no run carries the field {factor!r}", "UNKNOWN_FIELD")

    def level(key: RunKey) -> Optional[str]:
        if not key.has_field(factor):
            return None
        value = key.get(factor)
        return None if value is None else str(value)

    side_a = [r for r in results if level(r.key) == level_a]
    side_b = [r for r in results if level(r.key) == level_b]
    return side_a, side_b
