"""Tabular output in CSV or JSON with stable, shortest round-trip number text."""

import csv
import io
import json
import math
from enum import StrEnum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np


class OutputFormat(StrEnum):
    """Serialization of primary outputs."""

    CSV = "csv"
    JSON = "json"


def format_float(value: float) -> str:
    """Shortest decimal text that parses back to the same 64-bit float."""
    return repr(float(value))


def format_value(value: Any) -> str:
    """Text form of a table cell. Missing and NaN values become empty strings."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "" if math.isnan(value) else format_float(value)
    return str(value)


def json_value(value: Any) -> Any:
    """JSON-safe form of a table cell carrying the same numbers as `format_value`."""
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    return str(value)


def render_csv(fieldnames: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({name: format_value(row.get(name)) for name in fieldnames})
    return buffer.getvalue()


def render_json(fieldnames: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    records = [{name: json_value(row.get(name)) for name in fieldnames} for row in rows]
    return json.dumps(records, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_table(
    output_dir: Path,
    name: str,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    fmt: OutputFormat = OutputFormat.CSV,
) -> Path:
    """
    Write one table under ``output_dir`` as ``<name>.csv`` or ``<name>.json``.

    Args:
        output_dir: Directory receiving the file (created if missing)
        name: Base file name without extension
        fieldnames: Column names, in output order
        rows: Mappings from column name to cell value
        fmt: Output format

    Returns:
        Path of the written file
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    fmt = OutputFormat(fmt)
    rows = list(rows)
    if fmt == OutputFormat.CSV:
        text = render_csv(fieldnames, rows)
    else:
        text = render_json(fieldnames, rows)
    path = output_dir / f"{name}.{fmt.value}"
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    return path
