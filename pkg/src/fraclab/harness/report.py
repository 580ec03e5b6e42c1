"""Structured (JSON) and tabular (CSV) renderings of a run report.

Floats are written with 17 significant digits so every value round-trips.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

FORMATS = ("structured", "tabular")
TABLE_COLUMNS = ("instance_id", "check_id", "variant", "lhs", "rhs", "margin", "status",
                 "est_error", "tight", "reason", "label", "alpha", "a", "b", "x", "y", "m", "q")
_EXTENSIONS = {"structured": ".json", "tabular": ".csv"}


def format_float(value):
    if not math.isfinite(value):
        return "null"
    text = format(value, ".17g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _emit(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        out.append(json.dumps(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_structured(obj, indent=2):
    out = []
    _emit(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        text = format_float(value)
        return "" if text == "null" else text
    return str(value)


def render_report(report, format="structured"):
    """Render ``report`` as a JSON document or a CSV table of its rows."""
    if format == "structured":
        return dumps_structured(report.body())
    if format == "tabular":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for row in report.rows:
            inst = row.get("instance", {})
            writer.writerow([_cell(row.get(c, inst.get(c))) for c in TABLE_COLUMNS])
        return buf.getvalue()
    raise ValueError(f"format must be one of {FORMATS}, got {format!r}")


def write_report(report, out_dir, basename="report", format="structured"):
    """Write the rendered report and return its path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{basename}{_EXTENSIONS[format]}"
    path.write_text(render_report(report, format))
    return path
