"""Pooled analysis of per-run metrics."""

from overtune.analysis.ecdf import (
    FINAL,
    SEVERE_THRESHOLD,
    EcdfSummary,
    build_ecdf,
    relative_value,
    resolve_time_point,
    severity_class,
)
from overtune.analysis.groups import GroupSummary, group_summaries
from overtune.analysis.paired import (
    PairedComparison,
    PairedDelta,
    PairedSummary,
    QuadrantCounts,
    paired_compare,
    pearson_correlation,
    quadrant_counts,
    split_by_level,
)
from overtune.analysis.sweep import (
    ScaledSweepPoint,
    SweepPoint,
    budget_sweep,
    scaled_budget_sweep,
    scaled_iteration,
)

__all__ = [
    "FINAL",
    "SEVERE_THRESHOLD",
    "EcdfSummary",
    "GroupSummary",
    "PairedComparison",
    "PairedDelta",
    "PairedSummary",
    "QuadrantCounts",
    "ScaledSweepPoint",
    "SweepPoint",
    "budget_sweep",
    "build_ecdf",
    "group_summaries",
    "paired_compare",
    "pearson_correlation",
    "quadrant_counts",
    "relative_value",
    "resolve_time_point",
    "scaled_budget_sweep",
    "scaled_iteration",
    "severity_class",
    "split_by_level",
]
