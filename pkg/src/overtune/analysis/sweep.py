"""Anytime view: pooled metrics at fixed or scaled budgets."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from overtune.errors import ParameterError
from overtune.models import OvertuningReport

from .ecdf import relative_value

# Slack for fraction * T landing a hair above an integer.
_BUDGET_SLACK = 1e-9


@dataclass(frozen=True)
class SweepPoint:
    """Pooled means at one iteration of the budget grid."""

    iteration: int
    mean_ot: float
    mean_of: float
    mean_tr: float
    mean_rel_ot: float
    n: int
    n_excluded: int
    n_rel_defined: int
    fraction_nonzero_ot: float


@dataclass(frozen=True)
class ScaledSweepPoint:
    """Pooled means at one budget fraction of each run's own length."""

    budget: float
    mean_ot: float
    mean_of: float
    mean_tr: float
    mean_rel_ot: float
    n: int


def _mean(values: list[float]) -> float:
    return float(np.mean(values)) if values else math.nan


def _pool(reports: Sequence[OvertuningReport], iterations: Sequence[int], epsilon: Optional[float]):
    ot, of, tr, rel = [], [], [], []
    for report, t in zip(reports, iterations):
        ot.append(float(report.ot[t - 1]))
        of.append(float(report.of[t - 1]))
        tr.append(float(report.tr[t - 1]))
        value = relative_value(report, t, epsilon)
        if value is not None:
            rel.append(value)
    return ot, of, tr, rel


def budget_sweep(
    reports: Sequence[OvertuningReport],
    grid: Sequence[int],
    epsilon: Optional[float] = None,
) -> list[SweepPoint]:
    """
    Mean ot, of, tr and defined rel_ot over runs at each grid iteration.

    Runs shorter than a grid point are excluded from that point and counted.

    Raises:
        ParameterError: On an empty grid (EMPTY_GRID) or an iteration below 1
            (INVALID_TIME_POINT)
    """
    if len(grid) == 0:
        raise ParameterError("budget grid is empty", "EMPTY_GRID")
    bad = [t for t in grid if int(t) < 1]
    if bad:
        raise ParameterError(f"budget grid iterations must be >= 1, got {bad[0]}", "INVALID_TIME_POINT")

    points = []
    for t in grid:
        t = int(t)
        included = [r for r in reports if r.length >= t]
        ot, of, tr, rel = _pool(included, [t] * len(included), epsilon)
        points.append(
            SweepPoint(
                iteration=t,
                mean_ot=_mean(ot),
                mean_of=_mean(of),
                mean_tr=_mean(tr),
                mean_rel_ot=_mean(rel),
                n=len(included),
                n_excluded=len(reports) - len(included),
                n_rel_defined=len(rel),
                fraction_nonzero_ot=(sum(1 for v in ot if v != 0) / len(ot)) if ot else math.nan,
            )
        )
    return points


def scaled_iteration(fraction: float, length: int) -> int:
    """Iteration reached after spending ``fraction`` of a run of the given length."""
    return max(1, math.ceil(fraction * length - _BUDGET_SLACK))


def scaled_budget_sweep(
    reports: Sequence[OvertuningReport],
    fractions: Sequence[float],
    epsilon: Optional[float] = None,
) -> list[ScaledSweepPoint]:
    """
    Pooled means at budgets expressed as fractions of each run's length.

    No run is excluded, so runs of very different lengths pool on a common
    0-to-1 budget axis.

    Raises:
        ParameterError: On an empty grid (EMPTY_GRID) or a fraction outside
            (0, 1] (INVALID_FRACTION)
    """
    if len(fractions) == 0:
        raise ParameterError("budget grid is empty", "EMPTY_GRID")
    points = []
    for fraction in fractions:
        fraction = float(fraction)
        if not 0 < fraction <= 1:
            raise ParameterError(f"budget fraction must lie in (0, 1], got {fraction!r}", "INVALID_FRACTION")
        iterations = [scaled_iteration(fraction, r.length) for r in reports]
        ot, of, tr, rel = _pool(reports, iterations, epsilon)
        points.append(
            ScaledSweepPoint(
                budget=fraction,
                mean_ot=_mean(ot),
                mean_of=_mean(of),
                mean_tr=_mean(tr),
                mean_rel_ot=_mean(rel),
                n=len(reports),
            )
        )
    return points
