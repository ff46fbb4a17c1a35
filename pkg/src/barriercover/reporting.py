"""Delimited output and figure rendering for experiment tables.

CSV files carry the full experiment parameters as '#'-prefixed comment
lines before the header row, so every emitted file is self-describing
and byte-reproducible.  Figures are single-series line charts rendered
by matplotlib straight to the requested file (SVG by extension).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .experiments import ResultTable  # noqa: E402

__all__ = ["Series", "render_cell", "emit_csv", "parse_csv", "emit_svg"]


@dataclass(frozen=True)
class Series:
    x: tuple[float, ...]
    y: tuple[float, ...]
    label: str = ""


def render_cell(value) -> str:
    """Stable text form: repr for floats (round-trips exactly), str otherwise."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(table: ResultTable, path: str | Path) -> None:
    """Write meta comment lines, the header row, then the data rows."""
    buf = io.StringIO()
    for key, value in sorted(table.meta.items()):
        buf.write(f"# {key} = {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([render_cell(v) for v in row])
    Path(path).write_text(buf.getvalue())


def _parse_cell(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def parse_csv(path: str | Path) -> ResultTable:
    """Read back a file written by emit_csv."""
    meta: dict[str, str] = {}
    body: list[str] = []
    for line in Path(path).read_text().splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
        else:
            body.append(line)
    records = list(csv.reader(body))
    if not records:
        raise ValueError(f"{path} has no header row")
    columns = tuple(records[0])
    rows = [tuple(_parse_cell(cell) for cell in rec) for rec in records[1:]]
    return ResultTable(columns, rows, meta)


def emit_svg(series: Series, path: str | Path, *, title: str = "",
             xlabel: str = "", ylabel: str = "", log_x: bool = False,
             log_y: bool = False) -> None:
    """Render one line chart to the given file."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(series.x, series.y, marker="o",
            label=series.label if series.label else None)
    if log_x:
        ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    if title:
        ax.set_title(title)
    if xlabel:
        ax.set_xlabel(xlabel)
    if ylabel:
        ax.set_ylabel(ylabel)
    if series.label:
        ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
