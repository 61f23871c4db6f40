"""Empirical distribution of relative overtuning across runs."""

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from overtune.errors import ParameterError, ValidationError
from overtune.models import OvertuningReport, SeverityClass

FINAL = "final"
SEVERE_THRESHOLD = 1.0

TimePoint = Union[Literal["final"], int]


def severity_class(rel_ot: float) -> SeverityClass:
    """
    Severity band of a relative overtuning value.

    Raises:
        ParameterError: If the value is negative (NEGATIVE_REL_OT)
    """
    if rel_ot < 0 or math.isnan(rel_ot):
        raise ParameterError(f"relative overtuning must be non-negative, got {rel_ot!r}", "NEGATIVE_REL_OT")
    if rel_ot == 0:
        return SeverityClass.NONE
    if rel_ot > SEVERE_THRESHOLD:
        return SeverityClass.SEVERE
    return SeverityClass.MILD


def resolve_time_point(report: OvertuningReport, at: TimePoint) -> int:
    """1-based time point addressed by ``at`` in one report."""
    return report.length if at == FINAL else int(at)


def relative_value(report: OvertuningReport, t: int, epsilon: Optional[float] = None) -> Optional[float]:
    """
    Relative overtuning at 1-based time point t, re-thresholded at ``epsilon``.

    Uses the report's own epsilon when none is given. None when filtered.
    """
    epsilon = report.epsilon if epsilon is None else epsilon
    denominator = report.denominator[t - 1]
    if denominator > epsilon:
        return float(report.ot[t - 1] / denominator)
    return None


def _check_time_point(reports: Sequence[OvertuningReport], at: TimePoint) -> None:
    if at == FINAL:
        return
    if isinstance(at, bool) or not isinstance(at, (int, np.integer)):
        raise ParameterError(f"time point must be 'final' or an iteration, got {at!r}", "INVALID_TIME_POINT")
    shortest = min(r.length for r in reports)
    if not 1 <= at <= shortest:
        raise ParameterError(
            f"time point {at} outside 1..{shortest} (shortest run in the collection)",
            "INVALID_TIME_POINT",
        )


@dataclass(frozen=True, eq=False)
class EcdfSummary:
    """
    Sorted defined relative overtuning values with their empirical CDF.

    Runs whose improvement denominator does not exceed epsilon are counted
    in ``n_filtered`` and contribute no value.
    """

    values: np.ndarray
    n_total_runs: int
    n_filtered: int
    at: TimePoint = FINAL
    epsilon: float = 0.001

    @property
    def n_values(self) -> int:
        return int(self.values.size)

    def fraction_below(self, x: float) -> float:
        """F(x): fraction of values less than or equal to x. NaN when empty."""
        if self.n_values == 0:
            return math.nan
        return int(np.searchsorted(self.values, x, side="right")) / self.n_values

    __call__ = fraction_below

    def _fraction(self, mask: np.ndarray) -> float:
        if self.n_values == 0:
            return math.nan
        return int(np.count_nonzero(mask)) / self.n_values

    @property
    def fraction_zero(self) -> float:
        return self._fraction(self.values == 0)

    @property
    def fraction_severe(self) -> float:
        return self._fraction(self.values > SEVERE_THRESHOLD)

    @property
    def fraction_mild(self) -> float:
        return self._fraction((self.values > 0) & (self.values <= SEVERE_THRESHOLD))

    @property
    def fraction_filtered(self) -> float:
        return self.n_filtered / self.n_total_runs if self.n_total_runs else math.nan

    def quantile(self, q: float) -> float:
        """
        Nearest-rank quantile: the smallest value v with F(v) >= q.

        Raises:
            ParameterError: If q is outside [0, 1]
        """
        if not 0 <= q <= 1:
            raise ParameterError(f"quantile level must lie in [0, 1], got {q!r}", "INVALID_QUANTILE")
        if self.n_values == 0:
            return math.nan
        rank = max(1, math.ceil(q * self.n_values))
        return float(self.values[rank - 1])

    def step_points(self) -> list[tuple[float, float]]:
        """Distinct values with F evaluated at each, ascending."""
        distinct = np.unique(self.values)
        counts = np.searchsorted(self.values, distinct, side="right")
        return [(float(v), int(c) / self.n_values) for v, c in zip(distinct, counts)]


def build_ecdf(
    reports: Sequence[OvertuningReport],
    at: TimePoint = FINAL,
    epsilon: Optional[float] = None,
) -> EcdfSummary:
    """
    Pool relative overtuning at one time point across runs.

    Args:
        reports: Per-run reports
        at: "final" for each run's last iteration, or a fixed iteration
        epsilon: Improvement threshold; each report's own when omitted

    Returns:
        The pooled summary; an empty one when every run is filtered

    Raises:
        ValidationError: On an empty collection (EMPTY_CORPUS)
        ParameterError: On an iteration beyond the shortest run
            (INVALID_TIME_POINT) or a non-positive epsilon (INVALID_EPSILON)
    """
    reports = list(reports)
    if not reports:
        raise ValidationError("cannot build an ECDF from zero runs", "EMPTY_CORPUS")
    if epsilon is not None and not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon!r}", "INVALID_EPSILON")
    _check_time_point(reports, at)

    values: list[float] = []
    for report in reports:
        value = relative_value(report, resolve_time_point(report, at), epsilon)
        if value is not None:
            values.append(value)

    sorted_values = np.sort(np.asarray(values, dtype=np.float64))
    sorted_values.setflags(write=False)
    return EcdfSummary(
        values=sorted_values,
        n_total_runs=len(reports),
        n_filtered=len(reports) - len(values),
        at=at,
        epsilon=reports[0].epsilon if epsilon is None else float(epsilon),
    )
