"""Column layouts and row builders for every emitted table."""

from typing import TYPE_CHECKING, Any

from overtune.models import RunKey, RunMetrics

if TYPE_CHECKING:
    from overtune.analysis import (
        EcdfSummary,
        GroupSummary,
        PairedComparison,
        QuadrantCounts,
        ScaledSweepPoint,
        SweepPoint,
    )
    from overtune.replication import ReplicateCurves
    from overtune.selection import RuleSummary, ScatterPoint

KEY_COLUMNS = (
    "study",
    "learner",
    "dataset",
    "metric",
    "resampling",
    "dataset_size",
    "seed",
    "fold",
    "extra",
)

METRICS_COLUMNS = KEY_COLUMNS + (
    "T",
    "final_ot",
    "final_of",
    "final_tr",
    "final_oracle_tr",
    "final_rel_ot",
    "rel_ot_defined",
    "final_incumbent_index",
    "final_incumbent_val",
    "final_incumbent_test",
)

ECDF_COLUMNS = ("value", "F")
ECDF_SUMMARY_COLUMNS = (
    "at",
    "epsilon",
    "n_total_runs",
    "n_filtered",
    "n_values",
    "fraction_zero",
    "fraction_mild",
    "fraction_severe",
    "fraction_filtered",
    "median",
)
GROUP_SUMMARY_COLUMNS = (
    "run_count",
    "n_filtered",
    "mean_final_ot",
    "mean_final_of",
    "mean_final_tr",
    "fraction_zero",
    "fraction_mild",
    "fraction_severe",
)
SWEEP_COLUMNS = ("iteration", "mean_ot", "mean_of", "mean_tr", "mean_rel_ot", "n")
SWEEP_META_COLUMNS = ("iteration", "n_excluded", "n_rel_defined", "fraction_nonzero_ot")
SCALED_SWEEP_COLUMNS = ("budget", "mean_ot", "mean_of", "mean_tr", "mean_rel_ot", "n")
CURVES_COLUMNS = ("iteration", "mean_val", "se_val", "mean_test", "se_test")
QUADRANT_COLUMNS = ("q_pos_pos", "q_neg_pos", "q_neg_neg", "q_pos_neg", "on_axis")
RULES_COLUMNS = (
    "rule",
    "mean_delta_test",
    "mean_final_ot",
    "win_fraction",
    "n",
    "n_excluded",
    "mean_delta_ot",
) + QUADRANT_COLUMNS + ("correlation",)
RULE_SCATTER_COLUMNS = ("rule",) + KEY_COLUMNS + ("delta_ot", "delta_test")
PAIRS_COLUMNS = (
    "factor",
    "level_a",
    "level_b",
    "pairing_key",
    "delta_final_test",
    "delta_final_ot",
    "delta_final_of",
    "delta_final_tr",
)
PAIRS_SUMMARY_COLUMNS = (
    "factor",
    "n_pairs",
    "n_unmatched_a",
    "n_unmatched_b",
    "n_ambiguous",
    "mean_delta_test",
    "mean_delta_ot",
    "mean_delta_of",
    "mean_delta_tr",
    "fraction_positive",
    "fraction_negative",
) + QUADRANT_COLUMNS + ("correlation",)
ORACLE_COLUMNS = KEY_COLUMNS + ("oracle_min_test",)
VALIDATION_COLUMNS = (
    "runs",
    "rows_read",
    "rows_kept",
    "rows_dropped",
    "runs_rejected",
    "runs_too_short",
    "warnings",
    "duplicates",
    "length_histogram",
    "runs_per_study",
)


def key_row(key: RunKey) -> dict[str, Any]:
    return {
        "study": key.study,
        "learner": key.learner,
        "dataset": key.dataset,
        "metric": key.metric_name,
        "resampling": key.resampling,
        "dataset_size": key.dataset_size,
        "seed": key.seed,
        "fold": key.fold,
        "extra": key.extra_text(),
    }


def metrics_row(result: RunMetrics) -> dict[str, Any]:
    report = result.report
    trace = report.trace
    row = key_row(result.key)
    row.update(
        {
            "T": report.length,
            "final_ot": report.final_ot,
            "final_of": report.final_of,
            "final_tr": report.final_tr,
            "final_oracle_tr": report.final_oracle_tr,
            "final_rel_ot": report.final_rel_ot,
            "rel_ot_defined": report.final_rel_ot is not None,
            "final_incumbent_index": int(trace.incumbent_index[-1]),
            "final_incumbent_val": float(trace.incumbent_val[-1]),
            "final_incumbent_test": report.final_incumbent_test,
        }
    )
    return row


def ecdf_rows(summary: "EcdfSummary") -> list[dict[str, Any]]:
    return [{"value": value, "F": f} for value, f in summary.step_points()]


def ecdf_summary_row(summary: "EcdfSummary") -> dict[str, Any]:
    return {
        "at": str(summary.at),
        "epsilon": summary.epsilon,
        "n_total_runs": summary.n_total_runs,
        "n_filtered": summary.n_filtered,
        "n_values": summary.n_values,
        "fraction_zero": summary.fraction_zero,
        "fraction_mild": summary.fraction_mild,
        "fraction_severe": summary.fraction_severe,
        "fraction_filtered": summary.fraction_filtered,
        "median": summary.quantile(0.5),
    }


def group_row(group: "GroupSummary") -> dict[str, Any]:
    row: dict[str, Any] = dict(group.group_key)
    row.update(
        {
            "run_count": group.run_count,
            "n_filtered": group.ecdf.n_filtered,
            "mean_final_ot": group.mean_final_ot,
            "mean_final_of": group.mean_final_of,
            "mean_final_tr": group.mean_final_tr,
            "fraction_zero": group.ecdf.fraction_zero,
            "fraction_mild": group.ecdf.fraction_mild,
            "fraction_severe": group.ecdf.fraction_severe,
        }
    )
    return row


def sweep_row(point: "SweepPoint") -> dict[str, Any]:
    return {name: getattr(point, name) for name in SWEEP_COLUMNS}


def sweep_meta_row(point: "SweepPoint") -> dict[str, Any]:
    return {name: getattr(point, name) for name in SWEEP_META_COLUMNS}


def scaled_sweep_row(point: "ScaledSweepPoint") -> dict[str, Any]:
    return {name: getattr(point, name) for name in SCALED_SWEEP_COLUMNS}


def curves_rows(curves: "ReplicateCurves") -> list[dict[str, Any]]:
    return [
        {
            "iteration": int(curves.iterations[i]),
            "mean_val": float(curves.mean_val[i]),
            "se_val": float(curves.se_val[i]),
            "mean_test": float(curves.mean_test[i]),
            "se_test": float(curves.se_test[i]),
        }
        for i in range(curves.length)
    ]


def _quadrants(counts: "QuadrantCounts") -> dict[str, int]:
    return {
        "q_pos_pos": counts.both_positive,
        "q_neg_pos": counts.x_negative_y_positive,
        "q_neg_neg": counts.both_negative,
        "q_pos_neg": counts.x_positive_y_negative,
        "on_axis": counts.on_axis,
    }


def rule_row(summary: "RuleSummary") -> dict[str, Any]:
    row: dict[str, Any] = {
        "rule": summary.rule.label(),
        "mean_delta_test": summary.mean_delta_test,
        "mean_final_ot": summary.mean_final_ot,
        "win_fraction": summary.win_fraction,
        "n": summary.n,
        "n_excluded": summary.n_excluded,
        "mean_delta_ot": summary.mean_delta_ot,
        "correlation": summary.correlation,
    }
    row.update(_quadrants(summary.quadrants))
    return row


def scatter_row(point: "ScatterPoint") -> dict[str, Any]:
    row: dict[str, Any] = {"rule": point.rule.label()}
    row.update(key_row(point.key))
    row.update({"delta_ot": point.delta_ot, "delta_test": point.delta_test})
    return row


def pair_rows(comparison: "PairedComparison") -> list[dict[str, Any]]:
    return [
        {
            "factor": d.factor,
            "level_a": d.level_a,
            "level_b": d.level_b,
            "pairing_key": ";".join(f"{k}={v}" for k, v in d.pairing_key),
            "delta_final_test": d.delta_final_test,
            "delta_final_ot": d.delta_final_ot,
            "delta_final_of": d.delta_final_of,
            "delta_final_tr": d.delta_final_tr,
        }
        for d in comparison.deltas
    ]


def pairs_summary_row(comparison: "PairedComparison", factor: str) -> dict[str, Any]:
    s = comparison.summary
    row: dict[str, Any] = {
        "factor": factor,
        "n_pairs": s.n_pairs,
        "n_unmatched_a": s.n_unmatched_a,
        "n_unmatched_b": s.n_unmatched_b,
        "n_ambiguous": s.n_ambiguous,
        "mean_delta_test": s.mean_delta_test,
        "mean_delta_ot": s.mean_delta_ot,
        "mean_delta_of": s.mean_delta_of,
        "mean_delta_tr": s.mean_delta_tr,
        "fraction_positive": s.fraction_positive,
        "fraction_negative": s.fraction_negative,
        "correlation": s.correlation,
    }
    row.update(_quadrants(s.quadrants))
    return row


def oracle_row(key: RunKey, oracle_min_test: float) -> dict[str, Any]:
    row = key_row(key)
    row["oracle_min_test"] = oracle_min_test
    return row


def validation_row(summary: dict[str, Any]) -> dict[str, Any]:
    """Flatten mapping-valued entries to ``k:v, k:v`` text."""
    return {
        name: ", ".join(f"{k}:{v}" for k, v in value.items()) if isinstance(value, dict) else value
        for name, value in summary.items()
    }
