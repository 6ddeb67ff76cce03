"""Output formatting for interval reports and coverage tables."""

from __future__ import annotations

import csv
import json
import sys
from enum import Enum
from typing import Any

from rich.console import Console
from rich.table import Table

console = Console(stderr=True)

SIGNIFICANT_DIGITS = 6


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


def format_number(value: Any) -> str:
    """Render floats with six significant digits; other values as str; None as empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def print_output(
    data: list[dict[str, Any]] | dict[str, Any],
    fmt: OutputFormat = OutputFormat.TEXT,
    columns: list[str] | None = None,
    title: str | None = None,
) -> None:
    """Print data in the requested format.

    Args:
        data: The data to display (list of dicts or single dict).
        fmt: Output format (text, json, csv, table).
        columns: Which columns to show in text/table/csv mode. None = all.
        title: Optional title for table output.
    """
    if fmt == OutputFormat.JSON:
        print_json(data)
    elif fmt == OutputFormat.CSV:
        print_csv(data, columns)
    elif fmt == OutputFormat.TABLE:
        print_table(data, columns, title)
    else:
        print_text(data, columns)


def print_json(data: Any) -> None:
    """Print data as formatted JSON to stdout; floats keep full precision."""
    json.dump(data, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _rows(data: list[dict[str, Any]] | dict[str, Any]) -> list[dict[str, Any]]:
    return [data] if isinstance(data, dict) else data


def print_text(
    data: list[dict[str, Any]] | dict[str, Any],
    columns: list[str] | None = None,
) -> None:
    """Print one whitespace-separated line per row, no header."""
    data = _rows(data)
    if not data:
        return
    if columns is None:
        columns = list(data[0].keys())
    for row in data:
        sys.stdout.write(" ".join(format_number(row.get(col)) for col in columns) + "\n")


def print_table(
    data: list[dict[str, Any]] | dict[str, Any],
    columns: list[str] | None = None,
    title: str | None = None,
) -> None:
    """Print data as a Rich table."""
    data = _rows(data)

    if not data:
        console.print("[dim]No results.[/dim]")
        return

    # Auto-detect columns from first row if not specified
    if columns is None:
        columns = list(data[0].keys())

    table = Table(title=title, show_lines=False)
    for col in columns:
        table.add_column(col, overflow="fold")

    for row in data:
        table.add_row(*[format_number(row.get(col)) for col in columns])

    console.print(table)


def print_csv(
    data: list[dict[str, Any]] | dict[str, Any],
    columns: list[str] | None = None,
) -> None:
    """Print data as CSV to stdout with six significant digits."""
    data = _rows(data)

    if not data:
        return

    if columns is None:
        columns = list(data[0].keys())

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(columns)
    for row in data:
        writer.writerow([format_number(row.get(col)) for col in columns])
