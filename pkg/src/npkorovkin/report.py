"""Tabular results with deterministic CSV and minimal SVG output."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ArgumentError

KINDS = ("real", "complex", "int", "text")


@dataclass(frozen=True)
class Column:
    header: str
    unit: str = "1"
    kind: str = "real"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown column kind {self.kind!r}")


@dataclass
class ReportTable:
    """Named rows of values with typed, unit-annotated columns.

    Complex columns are written as two CSV fields, ``<header>_re`` and
    ``<header>_im``.
    """

    name: str
    columns: list[Column]
    rows: list[tuple] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.name:
            raise ArgumentError("table name must be nonempty")
        self.columns = [c if isinstance(c, Column) else Column(*c) for c in self.columns]
        for r in self.rows:
            self._check(r)

    def _check(self, row):
        if len(row) != len(self.columns):
            raise ArgumentError(f"row arity {len(row)} != {len(self.columns)} columns in {self.name}")

    def add(self, *row):
        self._check(row)
        self.rows.append(tuple(row))

    def column(self, header: str) -> list:
        i = [c.header for c in self.columns].index(header)
        return [r[i] for r in self.rows]

    def header_fields(self) -> list[str]:
        out = []
        for c in self.columns:
            if c.kind == "complex":
                out += [f"{c.header}_re [{c.unit}]", f"{c.header}_im [{c.unit}]"]
            else:
                out.append(f"{c.header} [{c.unit}]")
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.header_fields()) + "\n")
        for r in self.rows:
            fields = []
            for c, v in zip(self.columns, r):
                if c.kind == "complex":
                    v = complex(v)
                    fields += [fmt(v.real), fmt(v.imag)]
                elif c.kind == "int":
                    fields.append(str(int(v)))
                elif c.kind == "text":
                    fields.append(str(v))
                else:
                    fields.append(fmt(v))
            buf.write(",".join(fields) + "\n")
        return buf.getvalue()

    def write_csv(self, path: Path) -> Path:
        path = Path(path)
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(self.to_csv())
        return path

    def to_svg(self, width: int = 640, height: int = 400) -> str:
        return line_plot_svg(self, width, height)


def fmt(v) -> str:
    """12 significant digits; normalises negative zero."""
    v = float(v)
    if v == 0.0:
        v = 0.0
    if math.isnan(v):
        return "nan"
    return f"{v:.12g}"


def _series(table: ReportTable):
    if table.columns[0].kind in ("int", "real"):
        xs = [float(r[0]) for r in table.rows]
    else:
        xs = [float(i) for i in range(len(table.rows))]
    out = []
    for j, c in enumerate(table.columns[1:], start=1):
        if c.kind not in ("real", "complex") or j == 0:
            continue
        ys = [abs(complex(r[j])) for r in table.rows]
        pts = [(x, y) for x, y in zip(xs, ys) if y > 0 and math.isfinite(y)]
        if pts:
            out.append((c.header, pts))
    return out


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def line_plot_svg(table: ReportTable, width: int = 640, height: int = 400) -> str:
    """Polylines of every numeric column against the first, log-scale y."""
    series = _series(table)
    margin = 50
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
             f'<text x="{width / 2:.0f}" y="20" text-anchor="middle">{table.name}</text>']
    if not series:
        lines.append("</svg>")
        return "\n".join(lines) + "\n"
    allx = [p[0] for _, pts in series for p in pts]
    ally = [math.log10(p[1]) for _, pts in series for p in pts]
    x0, x1 = min(allx), max(allx)
    y0, y1 = math.floor(min(ally)), math.ceil(max(ally))
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (math.log10(y) - y0) / (y1 - y0) * (height - 2 * margin)

    lines.append(f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>')
    lines.append(f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>')
    for e in range(y0, y1 + 1):
        y = sy(10.0**e)
        lines.append(f'<text x="{margin - 5}" y="{y:.1f}" text-anchor="end" font-size="10">1e{e}</text>')
    for i, (name, pts) in enumerate(series):
        colour = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        lines.append(f'<polyline fill="none" stroke="{colour}" points="{coords}"/>')
        lines.append(f'<text x="{width - margin}" y="{margin + 14 * i}" text-anchor="end" '
                     f'font-size="11" fill="{colour}">{name}</text>')
    lines.append(f'<text x="{width / 2:.0f}" y="{height - 10}" text-anchor="middle" font-size="11">'
                 f'{table.columns[0].header}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
