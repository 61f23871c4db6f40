"""Per-run oracle table: best achievable test score of each run's search space."""

import csv
import logging
import math
from pathlib import Path
from typing import Iterable, Union

from overtune.errors import ValidationError
from overtune.models import MetricSpec, RunKey

from .metric_table import metric_lookup
from .parser import float_field, optional_int_field, text_field

LOGGER = logging.getLogger(__name__)

ORACLE_FIELD = "oracle_min_test"
EXTRA_FIELD = "extra"


def parse_extra_text(text: str, where: str = "<extra>") -> dict[str, str]:
    """Inverse of ``RunKey.extra_text``: ``a=1;b=2`` to a mapping."""
    extra: dict[str, str] = {}
    for item in text.split(";"):
        if not item.strip():
            continue
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValidationError(f"{where}: malformed extra item {item!r}, expected name=value", "INVALID_RECORD")
        extra[name.strip()] = value.strip()
    return extra


def read_oracle_table(path: Union[str, Path], metric_table: Iterable[MetricSpec]) -> dict[tuple, float]:
    """
    Read an oracle table (run key columns plus ``oracle_min_test``).

    Values are given in each metric's declared orientation and are returned
    lower-is-better, keyed by ``RunKey.identity``.

    Raises:
        FileNotFoundError: If the file does not exist
        ValidationError: If a row is malformed, names an unknown metric,
            or repeats a run key
    """
    path = Path(path)
    specs = metric_lookup(metric_table)
    oracles: dict[tuple, float] = {}
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or ORACLE_FIELD not in reader.fieldnames:
            raise ValidationError(f"{path}: header lacks column {ORACLE_FIELD!r}", "MISSING_FIELD")
        for row_no, row in enumerate(reader, start=1):
            where = f"{path} row {row_no}"
            key = RunKey(
                study=text_field(row, "study", where),
                learner=text_field(row, "learner", where),
                dataset=text_field(row, "dataset", where),
                metric_name=text_field(row, "metric", where),
                resampling=text_field(row, "resampling", where),
                dataset_size=optional_int_field(row, "dataset_size", where),
                seed=optional_int_field(row, "seed", where),
                fold=optional_int_field(row, "fold", where),
                extra=parse_extra_text(row.get(EXTRA_FIELD) or "", where),
            )
            spec = specs.get(key.metric_name)
            if spec is None:
                raise ValidationError(f"{where}: metric {key.metric_name!r} not in metric table", "UNKNOWN_METRIC")
            value = float_field(row.get(ORACLE_FIELD), ORACLE_FIELD, where)
            if not math.isfinite(value):
                raise ValidationError(f"{where}: {ORACLE_FIELD} must be finite", "INVALID_NUMBER")
            if key.identity in oracles:
                raise ValidationError(f"{where}: duplicate oracle for {key.label()}", "DUPLICATE_RUN_KEY")
            oracles[key.identity] = spec.sign * value
    LOGGER.info("read %d oracle values from %s", len(oracles), path)
    return oracles
