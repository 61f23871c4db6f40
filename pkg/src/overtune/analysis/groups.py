"""Stratified summaries of per-run metrics."""

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from overtune.errors import ParameterError, ValidationError
from overtune.models import RunMetrics

from .ecdf import EcdfSummary, build_ecdf


@dataclass(frozen=True, eq=False)
class GroupSummary:
    """Pooled statistics of the runs sharing one combination of field values."""

    group_key: tuple[tuple[str, Any], ...]
    ecdf: EcdfSummary
    mean_final_ot: float
    mean_final_of: float
    mean_final_tr: float
    run_count: int

    def key_dict(self) -> dict[str, Any]:
        return dict(self.group_key)


def _sortable(value: Any) -> tuple:
    if value is None:
        return (0, 0, "")
    if isinstance(value, int):
        return (1, value, "")
    return (2, 0, str(value))


def group_summaries(
    results: Sequence[RunMetrics],
    group_by: Sequence[str],
    epsilon: Optional[float] = None,
) -> list[GroupSummary]:
    """
    Partition runs by the values of ``group_by`` and summarize each group.

    Groups are returned in lexicographic order of their key values; within
    a group, reductions follow RunKey order.

    Args:
        results: Per-run keys and reports
        group_by: RunKey field names or extra column names
        epsilon: Improvement threshold for the per-group ECDF

    Raises:
        ValidationError: If there are no runs (EMPTY_CORPUS)
        ParameterError: If a field is missing from some run (UNKNOWN_FIELD)
    """
    results = sorted(results, key=lambda r: r.key.sort_key)
    if not results:
        raise ValidationError("cannot summarize zero runs", "EMPTY_CORPUS")
    for name in group_by:
        missing = [r.key for r in results if not r.key.has_field(name)]
        if missing:
            raise ParameterError(
                f"unknown group-by field {name!r} (absent from run {missing[0].label()})",
                "UNKNOWN_FIELD",
            )

    groups: dict[tuple, list[RunMetrics]] = {}
    for result in results:
        key = tuple((name, result.key.get(name)) for name in group_by)
        groups.setdefault(key, []).append(result)

    summaries = []
    for key in sorted(groups, key=lambda k: tuple(_sortable(v) for _, v in k)):
        members = groups[key]
        reports = [m.report for m in members]
        summaries.append(
            GroupSummary(
                group_key=key,
                ecdf=build_ecdf(reports, epsilon=epsilon),
                mean_final_ot=float(np.mean([r.final_ot for r in reports])),
                mean_final_of=float(np.mean([r.final_of for r in reports])),
                mean_final_tr=float(np.mean([r.final_tr for r in reports])),
                run_count=len(members),
            )
        )
    return summaries
