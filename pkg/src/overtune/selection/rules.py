"""Counterfactual incumbent-selection and stopping rules."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, Sequence, Union

import numpy as np

from overtune.analysis import QuadrantCounts, pearson_correlation, quadrant_counts
from overtune.errors import ParameterError, ValidationError
from overtune.metrics import compute_report
from overtune.models import HpoRun, OvertuningReport, RunKey, ScoreTrajectory

LOGGER = logging.getLogger(__name__)

# Slack for products like k * (T - 1) or f * T landing a hair off an integer.
_RANK_SLACK = 1e-9


class RuleKind(StrEnum):
    NAIVE_ARGMIN = "naive"
    STOP_AT_BUDGET = "stop"
    PERCENTILE = "percentile"


@dataclass(frozen=True)
class SelectionRule:
    """
    How the returned configuration is chosen from a trajectory.

    ``budget`` is an iteration count (int >= 1) or a fraction of the run
    length (float in (0, 1]). ``k`` is the percentile level in [0, 1].
    """

    kind: RuleKind
    budget: Optional[Union[int, float]] = None
    k: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind == RuleKind.STOP_AT_BUDGET:
            budget = self.budget
            if isinstance(budget, bool) or budget is None:
                raise ParameterError("stop rule needs a budget", "INVALID_RULE")
            if isinstance(budget, int) and budget < 1:
                raise ParameterError(f"stop budget must be >= 1, got {budget}", "INVALID_RULE")
            if isinstance(budget, float) and not 0 < budget <= 1:
                raise ParameterError(f"stop fraction must lie in (0, 1], got {budget!r}", "INVALID_RULE")
        if self.kind == RuleKind.PERCENTILE:
            if self.k is None or not 0 <= self.k <= 1:
                raise ParameterError(f"percentile level must lie in [0, 1], got {self.k!r}", "INVALID_RULE")

    @classmethod
    def naive(cls) -> "SelectionRule":
        return cls(RuleKind.NAIVE_ARGMIN)

    @classmethod
    def stop_at_budget(cls, budget: Union[int, float]) -> "SelectionRule":
        return cls(RuleKind.STOP_AT_BUDGET, budget=budget)

    @classmethod
    def percentile(cls, k: float) -> "SelectionRule":
        return cls(RuleKind.PERCENTILE, k=float(k))

    def label(self) -> str:
        if self.kind == RuleKind.STOP_AT_BUDGET:
            return f"stop:{self.budget!r}"
        if self.kind == RuleKind.PERCENTILE:
            return f"percentile:{self.k!r}"
        return self.kind.value

    def effective_budget(self, length: int) -> int:
        """
        Number of evaluations the rule may choose from.

        Raises:
            ParameterError: If an absolute budget exceeds the run length
                (BUDGET_EXCEEDS_LENGTH)
        """
        if self.kind != RuleKind.STOP_AT_BUDGET:
            return length
        if isinstance(self.budget, float):
            return max(1, math.floor(self.budget * length + _RANK_SLACK))
        if self.budget > length:
            raise ParameterError(
                f"stop budget {self.budget} exceeds trajectory length {length}",
                "BUDGET_EXCEEDS_LENGTH",
            )
        return int(self.budget)


def parse_rule(text: str) -> SelectionRule:
    """
    Parse ``naive``, ``stop:<t>``, ``stop:<fraction>`` or ``percentile:<k>``.

    A stop budget containing a decimal point is a fraction of the run length.

    Raises:
        ParameterError: On malformed text (INVALID_RULE)
    """
    name, _, arg = text.strip().partition(":")
    name = name.strip().lower()
    arg = arg.strip()
    try:
        if name in ("naive", "naive_argmin") and not arg:
            return SelectionRule.naive()
        if name in ("stop", "stop_at_budget") and arg:
            return SelectionRule.stop_at_budget(float(arg) if "." in arg else int(arg))
        if name == "percentile" and arg:
            return SelectionRule.percentile(float(arg))
    except ValueError:
        pass
    raise ParameterError(
        f"invalid rule {text!r}; expected naive, stop:<t>, stop:<fraction> or percentile:<k>",
        "INVALID_RULE",
    )


@dataclass(frozen=True)
class SelectionOutcome:
    """The configuration a rule returns and what it would have cost."""

    rule: SelectionRule
    budget: int
    chosen_index: int
    chosen_val: float
    chosen_test: float
    final_ot: float
    final_tr: float
    delta_vs_naive_test: float
    delta_vs_naive_ot: float


def _percentile_position(val: np.ndarray, k: float) -> int:
    # Nearest rank over (val, index) so ties go to the earliest evaluation.
    order = np.lexsort((np.arange(val.size), val))
    rank = math.ceil(k * (val.size - 1) - _RANK_SLACK) + 1
    return int(order[min(max(rank, 1), val.size) - 1])


def apply_rule(
    traj: ScoreTrajectory,
    rule: SelectionRule,
    report: Optional[OvertuningReport] = None,
) -> SelectionOutcome:
    """
    Evaluate one selection rule on a trajectory.

    naive returns the final incumbent; stop returns the incumbent at the
    budget; percentile(k) returns the configuration at nearest rank
    ceil(k*(T-1))+1 of the validation errors sorted ascending.

    final_ot and final_tr compare the chosen test error with the best
    incumbent and the best evaluated test error within the rule's budget.
    A percentile pick need not be an incumbent, so its final_ot is measured
    against the incumbent path and is negative when the pick beats every
    incumbent on test; final_tr stays non-negative.

    Raises:
        MetricError: On an empty trajectory (EMPTY_TRAJECTORY)
        ParameterError: If the budget exceeds the length (BUDGET_EXCEEDS_LENGTH)
    """
    report = report if report is not None else compute_report(traj)
    trace = report.trace
    naive_test = report.final_incumbent_test
    naive_ot = report.final_ot
    budget = rule.effective_budget(traj.length)

    if rule.kind == RuleKind.PERCENTILE:
        position = _percentile_position(traj.val, rule.k)
        chosen_test = float(traj.test[position])
        final_ot = chosen_test - float(trace.best_incumbent_test_so_far[-1])
        final_tr = chosen_test - float(np.min(traj.test))
    else:
        position = int(trace.positions[budget - 1])
        chosen_test = float(trace.incumbent_test[budget - 1])
        final_ot = float(report.ot[budget - 1])
        final_tr = float(report.tr[budget - 1])

    return SelectionOutcome(
        rule=rule,
        budget=budget,
        chosen_index=position + 1,
        chosen_val=float(traj.val[position]),
        chosen_test=chosen_test,
        final_ot=final_ot,
        final_tr=final_tr,
        delta_vs_naive_test=chosen_test - naive_test,
        delta_vs_naive_ot=final_ot - naive_ot,
    )


@dataclass(frozen=True)
class RuleSummary:
    """Pooled effect of one rule relative to naive selection."""

    rule: SelectionRule
    mean_delta_test: float
    mean_delta_ot: float
    mean_final_ot: float
    win_fraction: float
    n: int
    n_excluded: int
    quadrants: QuadrantCounts
    correlation: float


@dataclass(frozen=True)
class ScatterPoint:
    rule: SelectionRule
    key: RunKey
    delta_ot: float
    delta_test: float


@dataclass(frozen=True)
class RuleSweep:
    summaries: tuple[RuleSummary, ...]
    scatter: tuple[ScatterPoint, ...]


def _evaluate_run(run: HpoRun, rules: Sequence[SelectionRule]) -> list[Optional[SelectionOutcome]]:
    report = compute_report(run.trajectory)
    outcomes: list[Optional[SelectionOutcome]] = []
    for rule in rules:
        try:
            outcomes.append(apply_rule(run.trajectory, rule, report))
        except ParameterError as e:
            if e.code != "BUDGET_EXCEEDS_LENGTH":
                raise
            outcomes.append(None)
    return outcomes


def _mean(values: list[float]) -> float:
    return float(np.mean(values)) if values else math.nan


def rule_sweep(
    runs: Sequence[HpoRun],
    rules: Sequence[SelectionRule],
    threads: int = 1,
) -> RuleSweep:
    """
    Apply every rule to every run and pool the effects per rule.

    Runs a rule cannot be applied to (budget beyond their length) are
    excluded from that rule and counted. Reductions follow RunKey order.

    Raises:
        ValidationError: On an empty corpus (EMPTY_CORPUS)
        ParameterError: On an empty rule list (INVALID_RULE)
    """
    if len(runs) == 0:
        raise ValidationError("cannot evaluate rules on an empty corpus", "EMPTY_CORPUS")
    if len(rules) == 0:
        raise ParameterError("no selection rules given", "INVALID_RULE")
    ordered = sorted(runs, key=lambda r: (r.key.sort_key, r.source, r.first_row or 0))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        per_run = list(executor.map(lambda r: _evaluate_run(r, rules), ordered))

    summaries: list[RuleSummary] = []
    scatter: list[ScatterPoint] = []
    for i, rule in enumerate(rules):
        outcomes = [(run, outs[i]) for run, outs in zip(ordered, per_run) if outs[i] is not None]
        d_test = [o.delta_vs_naive_test for _, o in outcomes]
        d_ot = [o.delta_vs_naive_ot for _, o in outcomes]
        summaries.append(
            RuleSummary(
                rule=rule,
                mean_delta_test=_mean(d_test),
                mean_delta_ot=_mean(d_ot),
                mean_final_ot=_mean([o.final_ot for _, o in outcomes]),
                win_fraction=(sum(1 for d in d_test if d < 0) / len(d_test)) if d_test else math.nan,
                n=len(outcomes),
                n_excluded=len(ordered) - len(outcomes),
                quadrants=quadrant_counts(d_ot, d_test),
                correlation=pearson_correlation(d_ot, d_test),
            )
        )
        scatter.extend(
            ScatterPoint(rule=rule, key=run.key, delta_ot=o.delta_vs_naive_ot, delta_test=o.delta_vs_naive_test)
            for run, o in outcomes
        )
    LOGGER.info("evaluated %d rules on %d runs", len(rules), len(ordered))
    return RuleSweep(summaries=tuple(summaries), scatter=tuple(scatter))
