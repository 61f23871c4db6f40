"""Argument parsing for the overtune command line."""

import argparse
from typing import Union

from overtune.errors import ParameterError
from overtune.models import CorpusFormat
from overtune.reporting import OutputFormat


class ArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so usage errors map to their own exit code."""

    def error(self, message: str):
        raise ParameterError(f"{self.prog}: {message}", "INVALID_ARGUMENT")


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"expected a number >= 0, got {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text!r}")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text!r}")
    return value


def time_point(text: str) -> Union[str, int]:
    """``final`` or a positive iteration."""
    if text.strip().lower() == "final":
        return "final"
    return positive_int(text)


def iteration_grid(text: str) -> list[int]:
    """Comma-separated iterations; ``a:b`` expands to the inclusive range a..b."""
    grid: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            lo, _, hi = item.partition(":")
            start, stop = positive_int(lo), positive_int(hi)
            if stop < start:
                raise argparse.ArgumentTypeError(f"empty range {item!r}")
            grid.extend(range(start, stop + 1))
        else:
            grid.append(positive_int(item))
    return grid


def fraction_grid(text: str) -> list[float]:
    """Comma-separated budget fractions in (0, 1]."""
    fractions = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        value = positive_float(item)
        if value > 1:
            raise argparse.ArgumentTypeError(f"budget fraction must be <= 1, got {item!r}")
        fractions.append(value)
    return fractions


def comma_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _add_output(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--output", required=required, help="Directory receiving the output tables")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.CSV.value,
        help="Table format (default: csv)",
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=positive_int, default=None, help="Worker threads (default: OVERTUNE_THREADS or 1)")
    parser.add_argument("--seed", type=int, default=None, help="Base seed (default: OVERTUNE_SEED or 42)")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", nargs="+", required=True, help="Corpus file(s), .csv or .jsonl")
    parser.add_argument(
        "--metric-table",
        default=None,
        help="Metric orientation table (default: <input>.metrics or metric_table.txt next to the input)",
    )
    parser.add_argument(
        "--input-format",
        choices=[f.value for f in CorpusFormat],
        default=None,
        help="Corpus format (default: inferred from the file suffix)",
    )
    parser.add_argument("--min-length", type=positive_int, default=1, help="Exclude runs with fewer evaluations")
    parser.add_argument(
        "--epsilon",
        type=positive_float,
        default=None,
        help="Improvement threshold for relative overtuning (default: OVERTUNE_EPSILON or 0.001)",
    )
    _add_common(parser)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="overtune",
        description="Quantify overtuning in hyperparameter optimization runs.",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Logging level (default: OVERTUNE_LOG_LEVEL or INFO)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("validate", help="Parse and validate a corpus")
    _add_input(p)
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value,
                   help="Report as text (csv) or JSON on stdout")
    p.add_argument("--output", default=None, help="Also write the report to validation.csv or validation.json here")

    p = sub.add_parser("metrics", help="Final per-run overtuning metrics")
    _add_input(p)
    _add_output(p)
    oracle = p.add_mutually_exclusive_group()
    oracle.add_argument("--oracle-min", type=float, default=None, help="Best achievable test error of the search space")
    oracle.add_argument(
        "--oracle",
        default=None,
        help="Per-run oracle table (run key columns plus oracle_min_test), e.g. from simulate",
    )

    p = sub.add_parser("ecdf", help="Relative overtuning ECDF and severity fractions")
    _add_input(p)
    _add_output(p)
    p.add_argument("--at", type=time_point, default="final", help="'final' or an iteration (default: final)")
    p.add_argument("--group-by", type=comma_list, default=[], help="Comma-separated RunKey fields for groups.csv")

    p = sub.add_parser("sweep", help="Pooled metrics over a budget grid")
    _add_input(p)
    _add_output(p)
    p.add_argument("--budget-grid", type=iteration_grid, default=None, help="Iterations, e.g. 1,10,50 or 1:100")
    p.add_argument("--scaled-grid", type=fraction_grid, default=None, help="Budget fractions, e.g. 0.1,0.5,1")

    p = sub.add_parser("curves", help="Replicate mean/SE incumbent curves of one run")
    _add_input(p)
    _add_output(p)
    p.add_argument("--run-index", type=non_negative_int, default=0, help="Run to replicate, in RunKey order")
    p.add_argument("--replicates", type=positive_int, default=100, help="Number of replicates R")
    p.add_argument("--subsample-frac", type=positive_float, default=0.5, help="Subsample fraction f in (0, 1]")
    p.add_argument("--shuffle", action="store_true", help="Re-permute each subsample instead of keeping order")

    p = sub.add_parser("select", help="Evaluate counterfactual selection rules")
    _add_input(p)
    _add_output(p)
    p.add_argument("--rules", type=comma_list, default=["naive"],
                   help="Comma-separated rules: naive, stop:<t>, stop:<fraction>, percentile:<k>")

    p = sub.add_parser("compare", help="Paired comparison of two levels of one factor")
    _add_input(p)
    _add_output(p)
    p.add_argument("--factor", required=True, help="RunKey field or extra column that differs within pairs")
    p.add_argument("--levels", nargs=2, required=True, metavar=("A", "B"), help="Levels forming sides A and B")

    p = sub.add_parser("simulate", help="Generate a synthetic corpus with known ground truth")
    _add_output(p)
    _add_common(p)
    p.add_argument("--n-configs", type=positive_int, default=1000, help="Grid size N")
    p.add_argument("--trajectory-len", type=positive_int, default=500, help="Trajectory length T <= N")
    p.add_argument("--sigma-shared", type=non_negative_float, nargs="+", default=[0.0], help="Shared bias std (levels)")
    p.add_argument("--sigma-indep", type=non_negative_float, nargs="+", default=[0.1], help="Independent noise std (levels)")
    p.add_argument("--k-folds", type=positive_int, nargs="+", default=[1], help="Folds k (levels)")
    p.add_argument("--reshuffled", nargs="?", const="true", default="false", choices=["false", "true", "both"],
                   help="Redraw the shared bias per configuration (both: factorial level)")
    p.add_argument("--surface", default="iid_uniform", help="Test surface, e.g. iid_uniform:0,1 or quadratic_1d")
    p.add_argument("--n-seeds", type=positive_int, default=1, help="Seeds per cell: seed, seed+1, ...")

    p = sub.add_parser("serve", help="Start the HTTP service")
    p.add_argument("--port", type=positive_int, default=None, help="Port (default: PORT or 8000)")
    p.add_argument("--reload", action="store_true", default=None, help="Auto-reload on code changes")

    return parser
