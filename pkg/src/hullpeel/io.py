"""Point files (CSV) and trace files (JSON)."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exceptions import ParseError
from .geometry import Point
from .objectives import RootSum

__all__ = [
    "MAX_DECIMALS",
    "parse_decimal",
    "format_decimal",
    "parse_points",
    "read_points",
    "format_points",
    "write_points",
    "trace_to_dict",
    "dumps_trace",
    "write_trace",
    "read_trace",
    "format_value",
]

MAX_DECIMALS = 12
_DECIMAL = re.compile(r"^([+-]?)(\d*)(?:\.(\d*))?$")


def parse_decimal(text: str):
    """Exact value of a plain decimal string: int, or Fraction when fractional."""
    s = text.strip()
    m = _DECIMAL.match(s)
    if not m or not (m.group(2) or m.group(3)):
        raise ValueError(f"not a decimal number: {text!r}")
    sign, whole, frac = m.group(1), m.group(2) or "0", m.group(3) or ""
    if len(frac) > MAX_DECIMALS:
        raise ValueError(f"{text!r} has more than {MAX_DECIMALS} fractional digits")
    value = int(whole + frac) if frac else int(whole)
    if sign == "-":
        value = -value
    if frac.strip("0") == "":
        return value // 10 ** len(frac) if frac else value
    return Fraction(value, 10 ** len(frac))


def format_decimal(value) -> str:
    """Shortest exact decimal string for an int or terminating Fraction."""
    if isinstance(value, int):
        return str(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    digits = next((d for d in range(1, MAX_DECIMALS + 1) if 10 ** d % den == 0), None)
    if digits is None:
        raise ValueError(f"{value} has no decimal form with at most {MAX_DECIMALS} digits")
    scaled = value * 10 ** digits
    n = abs(scaled.numerator)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(n, 10 ** digits)
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_s}" if frac_s else f"{sign}{whole}"


def parse_points(text: str, source: str = "<input>") -> list:
    """Points from CSV text; ids follow row order (header and blanks skipped)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not out and _is_header(line):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"{source}: expected 'x,y', got {raw!r}", line=lineno)
        try:
            x = parse_decimal(parts[0])
            y = parse_decimal(parts[1])
        except ValueError as e:
            raise ParseError(f"{source}: {e}", line=lineno) from None
        out.append(Point(x, y, len(out)))
    return out


def _is_header(line: str) -> bool:
    return line.replace(" ", "").lower() == "x,y"


def read_points(path) -> list:
    path = Path(path)
    return parse_points(path.read_text(), str(path))


def format_points(points: Sequence[Point], header: bool = True) -> str:
    rows = ["x,y"] if header else []
    for p in sorted(points, key=lambda q: q.id):
        rows.append(f"{format_decimal(p.x)},{format_decimal(p.y)}")
    return "\n".join(rows) + "\n"


def write_points(path, points: Sequence[Point], header: bool = True) -> None:
    Path(path).write_text(format_points(points, header))


def format_value(value) -> str:
    """Exact text form of a sensitivity (int, Fraction or RootSum)."""
    if isinstance(value, RootSum):
        parts = []
        if value.rational or not value.terms:
            parts.append(str(value.rational))
        for r, c in sorted(value.terms.items()):
            parts.append(f"{c}*sqrt({r})")
        return " + ".join(parts)
    return str(value)


def _coord(v):
    try:
        return format_decimal(v)
    except ValueError:
        return str(v)


def trace_to_dict(trace, *, seed=None, points_by_id=None) -> dict:
    """TraceFile document for a peel or oracle trace."""
    events = []
    for e in trace.events:
        p = e.peeled
        if points_by_id is not None:
            p = points_by_id.get(p.id, p)
        events.append({
            "step": e.step,
            "point": {"x": _coord(p.x), "y": _coord(p.y), "id": p.id},
            "sensitivity": float(e.sensitivity),
            "sensitivity_exact": format_value(e.sensitivity),
            "newly_active": e.newly_active,
            "l1_size_after": e.l1_size_after,
            "l2_size_after": e.l2_size_after,
        })
    stats = getattr(trace, "stats", {}) or {}
    keep = ("activations", "tangent_queries", "extreme_queries", "restore_calls",
            "restore_queries", "wall_ms", "engine")
    return {
        "method": getattr(trace, "method", "weighted"),
        "objective": trace.objective,
        "seed": seed,
        "n": getattr(trace, "n", None),
        "k": getattr(trace, "k", len(events)),
        "terminated": getattr(trace, "terminated", False),
        "events": events,
        "stats": {key: stats[key] for key in keep if key in stats},
    }


def dumps_trace(trace, **kwargs) -> str:
    return json.dumps(trace_to_dict(trace, **kwargs), indent=1, sort_keys=True) + "\n"


def write_trace(path, trace, **kwargs) -> None:
    Path(path).write_text(dumps_trace(trace, **kwargs))


def read_trace(path) -> dict:
    return json.loads(Path(path).read_text())
