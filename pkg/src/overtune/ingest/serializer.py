"""Writing runs back out in the canonical corpus schema."""

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

from overtune.errors import ValidationError
from overtune.models import CorpusFormat, HpoRun, MetricSpec
from overtune.reporting import format_float, format_value

from .metric_table import metric_lookup
from .parser import SCHEMA_COLUMNS


def _records(runs: Sequence[HpoRun], specs: dict[str, MetricSpec]) -> Iterable[dict[str, Any]]:
    for run in runs:
        key = run.key
        if key.metric_name not in specs:
            raise ValidationError(
                f"run {key.label()}: metric {key.metric_name!r} missing from the metric table",
                "UNKNOWN_METRIC",
            )
        sign = specs[key.metric_name].sign
        traj = run.trajectory
        for position in range(traj.length):
            record: dict[str, Any] = {
                "study": key.study,
                "learner": key.learner,
                "dataset": key.dataset,
                "metric": key.metric_name,
                "resampling": key.resampling,
                "dataset_size": key.dataset_size,
                "seed": key.seed,
                "fold": key.fold,
                "iteration": position + 1,
                # Negation is exact, so the declared orientation round-trips bit for bit.
                "val": sign * float(traj.val[position]),
                "test": sign * float(traj.test[position]),
            }
            record.update(key.extra_dict)
            yield record


def serialize_corpus(
    runs: Sequence[HpoRun],
    path: Union[str, Path],
    fmt: Union[CorpusFormat, str] = CorpusFormat.CSV,
    metric_table: Sequence[MetricSpec] = (),
) -> Path:
    """
    Write runs in the canonical ingest schema.

    Scores are converted back to the orientation declared in the metric
    table and written as shortest round-trip decimals, so parsing the file
    again reproduces the same trajectories.

    Args:
        runs: Runs to write, in output order
        path: Destination file
        fmt: csv or jsonl
        metric_table: Orientation of every metric used by the runs

    Returns:
        The written path
    """
    path = Path(path)
    fmt = CorpusFormat(fmt)
    specs = metric_lookup(metric_table)
    extra_columns = sorted({k for run in runs for k, _ in run.key.extra} - set(SCHEMA_COLUMNS))
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="") as handle:
        if fmt == CorpusFormat.CSV:
            fieldnames = list(SCHEMA_COLUMNS) + extra_columns
            writer = csv.DictWriter(handle, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            for record in _records(runs, specs):
                writer.writerow(
                    {
                        name: format_float(value) if name in ("val", "test") else format_value(value)
                        for name, value in ((n, record.get(n)) for n in fieldnames)
                    }
                )
        else:
            for record in _records(runs, specs):
                handle.write(json.dumps(record, allow_nan=False) + "\n")
    return path
