"""Subcommand implementations: thin orchestration over the library modules."""

import argparse
import json
import logging
from pathlib import Path
from typing import Mapping, Optional

from overtune.analysis import (
    budget_sweep,
    build_ecdf,
    group_summaries,
    paired_compare,
    scaled_budget_sweep,
    split_by_level,
)
from overtune.config import Settings
from overtune.errors import ParameterError
from overtune.ingest import (
    CorpusValidator,
    find_metric_table,
    parse_corpora,
    read_metric_table,
    read_oracle_table,
    serialize_corpus,
    write_metric_table,
)
from overtune.log import stage
from overtune.models import CorpusFormat, MetricSpec, ParsedCorpus, RunMetrics
from overtune.processing import CorpusProcessor
from overtune.replication import replicate_curves
from overtune.reporting import OutputFormat, rows, write_table
from overtune.selection import parse_rule, rule_sweep
from overtune.synthetic import (
    SyntheticSpec,
    TestSurface,
    factorial_specs,
    sweep_grid,
    synthetic_metric_table,
)

LOGGER = logging.getLogger(__name__)

CORPUS_FILE = "corpus.csv"
METRIC_TABLE_FILE = "metric_table.txt"


def _threads(args: argparse.Namespace, settings: Settings) -> int:
    return args.threads if getattr(args, "threads", None) is not None else settings.threads


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    return args.seed if getattr(args, "seed", None) is not None else settings.seed


def _epsilon(args: argparse.Namespace, settings: Settings) -> float:
    return args.epsilon if getattr(args, "epsilon", None) is not None else settings.epsilon


def _metric_table(args: argparse.Namespace) -> list[MetricSpec]:
    """
    Read --metric-table, or the table found next to the first input.

    Raises:
        FileNotFoundError: If no metric table is given or found next to the input
    """
    table_path = args.metric_table or find_metric_table(args.input[0])
    if table_path is None:
        raise FileNotFoundError(
            f"no metric table given (--metric-table) and none found next to {args.input[0]}"
        )
    return read_metric_table(table_path)


def _load_corpus(args: argparse.Namespace, settings: Settings) -> ParsedCorpus:
    """Parse and validate every --input file."""
    specs = _metric_table(args)
    with stage(LOGGER, "parse"):
        corpus = parse_corpora(
            args.input,
            fmt=args.input_format,
            metric_table=specs,
            min_length=args.min_length,
            threads=_threads(args, settings),
        )
    with stage(LOGGER, "validate"):
        CorpusValidator.validate_corpus(corpus.runs)
    return corpus


def _compute(
    args: argparse.Namespace,
    settings: Settings,
    corpus: ParsedCorpus,
    oracle_min_test: Optional[float] = None,
    oracles: Optional[Mapping[tuple, float]] = None,
) -> list[RunMetrics]:
    with stage(LOGGER, "compute"):
        return CorpusProcessor.compute_metrics(
            corpus.runs,
            epsilon=_epsilon(args, settings),
            threads=_threads(args, settings),
            oracle_min_test=oracle_min_test,
            oracles=oracles,
        )


def _emit(args: argparse.Namespace, name: str, fieldnames, table_rows) -> Path:
    path = write_table(Path(args.output), name, fieldnames, table_rows, OutputFormat(args.format))
    LOGGER.info("wrote %s", path)
    return path


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    corpus = _load_corpus(args, settings)
    report = CorpusValidator.build_report(corpus.runs)
    stats = corpus.stats
    summary = {
        "runs": report.n_runs,
        "rows_read": stats.rows_read,
        "rows_kept": stats.rows_kept,
        "rows_dropped": stats.rows_dropped,
        "runs_rejected": stats.runs_rejected,
        "runs_too_short": stats.runs_too_short,
        "warnings": stats.warning_count,
        "duplicates": len(report.duplicates),
        "length_histogram": {str(k): v for k, v in report.length_histogram.items()},
        "runs_per_study": report.runs_per_study,
    }
    if args.format == OutputFormat.JSON.value:
        print(json.dumps(summary, indent=2))
    else:
        for name, value in rows.validation_row(summary).items():
            print(f"{name}: {value}")
    if args.output:
        _emit(args, "validation", rows.VALIDATION_COLUMNS, [rows.validation_row(summary)])
    return 0


def cmd_metrics(args: argparse.Namespace, settings: Settings) -> int:
    corpus = _load_corpus(args, settings)
    oracles = read_oracle_table(args.oracle, _metric_table(args)) if args.oracle else None
    results = _compute(args, settings, corpus, oracle_min_test=args.oracle_min, oracles=oracles)
    with stage(LOGGER, "emit"):
        _emit(args, "metrics", rows.METRICS_COLUMNS, [rows.metrics_row(r) for r in results])
    return 0


def cmd_ecdf(args: argparse.Namespace, settings: Settings) -> int:
    corpus = _load_corpus(args, settings)
    results = _compute(args, settings, corpus)
    epsilon = _epsilon(args, settings)
    with stage(LOGGER, "ecdf"):
        summary = build_ecdf([r.report for r in results], at=args.at, epsilon=epsilon)
        groups = group_summaries(results, args.group_by, epsilon=epsilon) if args.group_by else []
    with stage(LOGGER, "emit"):
        _emit(args, "ecdf", rows.ECDF_COLUMNS, rows.ecdf_rows(summary))
        _emit(args, "ecdf_summary", rows.ECDF_SUMMARY_COLUMNS, [rows.ecdf_summary_row(summary)])
        if args.group_by:
            _emit(
                args,
                "groups",
                tuple(args.group_by) + rows.GROUP_SUMMARY_COLUMNS,
                [rows.group_row(g) for g in groups],
            )
    return 0


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    if not args.budget_grid and not args.scaled_grid:
        raise ParameterError("sweep needs --budget-grid and/or --scaled-grid", "EMPTY_GRID")
    corpus = _load_corpus(args, settings)
    results = _compute(args, settings, corpus)
    reports = [r.report for r in results]
    epsilon = _epsilon(args, settings)
    with stage(LOGGER, "sweep"):
        points = budget_sweep(reports, args.budget_grid, epsilon) if args.budget_grid else []
        scaled = scaled_budget_sweep(reports, args.scaled_grid, epsilon) if args.scaled_grid else []
    with stage(LOGGER, "emit"):
        if args.budget_grid:
            _emit(args, "sweep", rows.SWEEP_COLUMNS, [rows.sweep_row(p) for p in points])
            _emit(args, "sweep_meta", rows.SWEEP_META_COLUMNS, [rows.sweep_meta_row(p) for p in points])
        if args.scaled_grid:
            _emit(args, "sweep_scaled", rows.SCALED_SWEEP_COLUMNS, [rows.scaled_sweep_row(p) for p in scaled])
    return 0


def cmd_curves(args: argparse.Namespace, settings: Settings) -> int:
    corpus = _load_corpus(args, settings)
    if args.run_index >= len(corpus):
        raise ParameterError(
            f"--run-index {args.run_index} out of range for {len(corpus)} runs",
            "INVALID_ARGUMENT",
        )
    run = corpus.runs[args.run_index]
    LOGGER.info("replicating run %s", run.key.label())
    with stage(LOGGER, "replicate"):
        curves = replicate_curves(
            run.trajectory,
            f=args.subsample_frac,
            R=args.replicates,
            seed=_seed(args, settings),
            shuffle=args.shuffle,
            threads=_threads(args, settings),
        )
    with stage(LOGGER, "emit"):
        _emit(args, "curves", rows.CURVES_COLUMNS, rows.curves_rows(curves))
    return 0


def cmd_select(args: argparse.Namespace, settings: Settings) -> int:
    rules = [parse_rule(text) for text in args.rules]
    corpus = _load_corpus(args, settings)
    with stage(LOGGER, "select"):
        sweep = rule_sweep(corpus.runs, rules, threads=_threads(args, settings))
    with stage(LOGGER, "emit"):
        _emit(args, "rules", rows.RULES_COLUMNS, [rows.rule_row(s) for s in sweep.summaries])
        _emit(args, "rule_scatter", rows.RULE_SCATTER_COLUMNS, [rows.scatter_row(p) for p in sweep.scatter])
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    corpus = _load_corpus(args, settings)
    results = _compute(args, settings, corpus)
    level_a, level_b = args.levels
    with stage(LOGGER, "compare"):
        side_a, side_b = split_by_level(results, args.factor, level_a, level_b)
        comparison = paired_compare(side_a, side_b, args.factor)
    LOGGER.info(
        "%d pairs, %d unmatched in A, %d unmatched in B, %d ambiguous",
        comparison.summary.n_pairs,
        comparison.summary.n_unmatched_a,
        comparison.summary.n_unmatched_b,
        comparison.summary.n_ambiguous,
    )
    with stage(LOGGER, "emit"):
        _emit(args, "pairs", rows.PAIRS_COLUMNS, rows.pair_rows(comparison))
        _emit(args, "pairs_summary", rows.PAIRS_SUMMARY_COLUMNS, [rows.pairs_summary_row(comparison, args.factor)])
    return 0


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    seed = _seed(args, settings)
    base = SyntheticSpec(
        n_configs=args.n_configs,
        test_surface=TestSurface.parse(args.surface),
        trajectory_len=args.trajectory_len,
    )
    reshuffled = {"false": [False], "true": [True], "both": [False, True]}[args.reshuffled]
    specs = factorial_specs(
        base,
        range(seed, seed + args.n_seeds),
        sigma_shared=args.sigma_shared,
        sigma_indep=args.sigma_indep,
        k_folds=args.k_folds,
        reshuffled=reshuffled,
    )
    with stage(LOGGER, "simulate"):
        generated = sweep_grid(specs, threads=_threads(args, settings))
    output = Path(args.output)
    with stage(LOGGER, "emit"):
        table = synthetic_metric_table()
        serialize_corpus([g.to_hpo_run() for g in generated], output / CORPUS_FILE, CorpusFormat.CSV, table)
        write_metric_table(output / METRIC_TABLE_FILE, table)
        _emit(args, "oracle", rows.ORACLE_COLUMNS, [rows.oracle_row(g.key, g.oracle_min_test) for g in generated])
    return 0


def cmd_serve(args: argparse.Namespace, settings: Settings) -> int:
    import uvicorn

    uvicorn.run(
        "overtune.app:app",
        host="0.0.0.0",
        port=args.port if args.port is not None else settings.port,
        reload=args.reload if args.reload is not None else settings.reload,
    )
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "metrics": cmd_metrics,
    "ecdf": cmd_ecdf,
    "sweep": cmd_sweep,
    "curves": cmd_curves,
    "select": cmd_select,
    "compare": cmd_compare,
    "simulate": cmd_simulate,
    "serve": cmd_serve,
}
