"""Deterministic JSON, CSV and SVG writers.

Floats are written with 17 significant digits so that identical inputs
give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Sequence

from .algebra import DoubleNumber


def _fmt(v: float) -> str:
    # shortest text that round-trips; identical across runs and platforms
    return repr(float(v))


def _plain(obj):
    if isinstance(obj, DoubleNumber):
        return {"t": obj.t, "x": obj.x}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enums
        return obj.value
    return obj


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with fixed float formatting; key order is preserved."""
    return _encode(_plain(obj))


def polylines_json(polylines) -> list:
    return [
        {
            "line_id": pl.source_line,
            "axis": "t" if pl.axis == 0 else "x",
            "value": pl.value,
            "breaks": list(pl.breaks),
            "points": [[p.t, p.x] for p in pl.points],
        }
        for pl in polylines
    ]


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else ("" if v is None else v) for v in row])
    return buf.getvalue()


def polylines_csv(polylines) -> str:
    return _csv_text(
        ("line_id", "k", "t", "x"),
        ((pl.source_line, k, p.t, p.x) for pl in polylines for k, p in enumerate(pl.points)),
    )


def rows_csv(header: Sequence[str], rows) -> str:
    return _csv_text(header, rows)


def polylines_svg(polylines, size: int = 600, cone_center: DoubleNumber = DoubleNumber(0.0, 0.0)) -> str:
    """One path per valid run, viewBox fitted to the data, cone lines of ``cone_center`` dashed.

    The ``x`` axis of the double plane is drawn upward.
    """
    pts = [p for pl in polylines for p in pl.points]
    if not pts:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"></svg>\n'
    t0, t1 = min(p.t for p in pts), max(p.t for p in pts)
    x0, x1 = min(p.x for p in pts), max(p.x for p in pts)
    span = max(t1 - t0, x1 - x0, 1e-12)
    pad = 0.05 * span
    t0, x0, span = t0 - pad, x0 - pad, span + 2 * pad
    stroke = span / 400

    def xy(t, x):
        return f"{_fmt(t)},{_fmt(-x)}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_fmt(t0)} {_fmt(-(x0 + span))} {_fmt(span)} {_fmt(span)}">'
    ]
    c = cone_center
    r = 2 * span
    for sgn in (1, -1):
        out.append(
            f'<line x1="{_fmt(c.t - r)}" y1="{_fmt(-(c.x - sgn * r))}" x2="{_fmt(c.t + r)}" '
            f'y2="{_fmt(-(c.x + sgn * r))}" stroke="gray" stroke-width="{_fmt(stroke)}" '
            f'stroke-dasharray="{_fmt(4 * stroke)},{_fmt(4 * stroke)}"/>'
        )
    for pl in polylines:
        for run in pl.runs():
            if len(run) < 2:
                continue
            d = "M" + " L".join(xy(p.t, p.x) for p in run)
            out.append(
                f'<path d="{d}" fill="none" stroke="black" stroke-width="{_fmt(stroke)}" '
                f'data-line="{pl.source_line}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
