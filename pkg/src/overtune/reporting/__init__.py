"""Output emission for primary results."""

from overtune.reporting import rows
from overtune.reporting.tables import (
    OutputFormat,
    format_float,
    format_value,
    json_value,
    render_csv,
    render_json,
    write_table,
)

__all__ = [
    "OutputFormat",
    "format_float",
    "format_value",
    "json_value",
    "render_csv",
    "render_json",
    "rows",
    "write_table",
]
