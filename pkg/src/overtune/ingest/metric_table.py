"""Metric table: declared orientation of every performance metric in a corpus."""

from pathlib import Path
from typing import Iterable, Optional, Union

from overtune.errors import ValidationError
from overtune.models import MetricSpec, Orientation

# Sidecar file names looked up next to an input corpus when no table is given.
SIDECAR_SUFFIX = ".metrics"
SIDECAR_NAME = "metric_table.txt"


def parse_metric_table(text: str, source: str = "<metric table>") -> list[MetricSpec]:
    """
    Parse metric table text.

    Each non-blank, non-comment line reads ``name,minimize|maximize`` with an
    optional third field holding a free-text scale note.

    Args:
        text: Table contents
        source: Name used in error messages

    Returns:
        Metric specs in file order

    Raises:
        ValidationError: On malformed lines, unknown orientations or duplicate names
    """
    specs: list[MetricSpec] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",", 2)]
        if len(parts) < 2 or not parts[0]:
            raise ValidationError(
                f"{source} line {line_no}: expected 'name,minimize|maximize', got {raw!r}",
                "INVALID_METRIC_TABLE",
            )
        name, orientation = parts[0], parts[1].lower()
        try:
            parsed = Orientation(orientation)
        except ValueError:
            raise ValidationError(
                f"{source} line {line_no}: unknown orientation {parts[1]!r} for metric {name!r}",
                "INVALID_METRIC_TABLE",
            )
        if name in seen:
            raise ValidationError(
                f"{source} line {line_no}: metric {name!r} declared twice",
                "INVALID_METRIC_TABLE",
            )
        seen.add(name)
        specs.append(MetricSpec(name=name, orientation=parsed, scale_note=parts[2] if len(parts) > 2 else ""))
    if not specs:
        raise ValidationError(f"{source}: metric table declares no metrics", "INVALID_METRIC_TABLE")
    return specs


def read_metric_table(path: Union[str, Path]) -> list[MetricSpec]:
    """
    Read a metric table file.

    Raises:
        FileNotFoundError: If the file does not exist
        ValidationError: If the contents are malformed
    """
    path = Path(path)
    return parse_metric_table(path.read_text(encoding="utf-8"), source=str(path))


def write_metric_table(path: Union[str, Path], specs: Iterable[MetricSpec]) -> None:
    lines = [
        f"{s.name},{s.orientation.value}" + (f",{s.scale_note}" if s.scale_note else "")
        for s in specs
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def metric_lookup(specs: Iterable[MetricSpec]) -> dict[str, MetricSpec]:
    return {spec.name: spec for spec in specs}


def find_metric_table(input_path: Union[str, Path]) -> Optional[Path]:
    """Sidecar metric table for an input corpus, if one exists."""
    input_path = Path(input_path)
    for candidate in (
        input_path.with_suffix(SIDECAR_SUFFIX),
        input_path.parent / SIDECAR_NAME,
    ):
        if candidate.is_file():
            return candidate
    return None
