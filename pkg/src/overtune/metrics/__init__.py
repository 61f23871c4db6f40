"""Incumbent extraction and overtuning metrics."""

from overtune.metrics.core import (
    DEFAULT_EPSILON,
    TOLERANCE,
    compute_report,
    improvement_denominator,
    incumbent_positions,
    incumbent_trace,
    meta_overfitting,
    oracle_test_regret,
    overtuning,
    relative_overtuning,
    trajectory_test_regret,
)

__all__ = [
    "DEFAULT_EPSILON",
    "TOLERANCE",
    "compute_report",
    "improvement_denominator",
    "incumbent_positions",
    "incumbent_trace",
    "meta_overfitting",
    "oracle_test_regret",
    "overtuning",
    "relative_overtuning",
    "trajectory_test_regret",
]
