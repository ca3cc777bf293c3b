"""Exact planar predicates and the general-position canonicalization layer.

Coordinates are exact numbers (``int`` or :class:`fractions.Fraction`), so every
predicate below is decided without rounding.  Hull cycles are kept clockwise
throughout the package; :func:`shoelace_term` is signed so that summing it over
a clockwise cycle gives the (positive) enclosed area.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DegenerateInputError, TooFewPointsError

__all__ = [
    "Point",
    "Orientation",
    "orient",
    "cross",
    "left_of",
    "in_triangle",
    "polygon_area",
    "shoelace_term",
    "find_collinear_triple",
    "canonicalize",
    "as_exact",
]

# exhaustive O(n^2) collinearity scan is skipped above this size; the
# predicates still raise on an exact collinear triple, and callers re-perturb.
COLLINEAR_CHECK_LIMIT = 1500

_PERTURB_RESOLUTION = 1 << 20


@dataclass(frozen=True, slots=True)
class Point:
    x: int | Fraction
    y: int | Fraction
    id: int = -1

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y}, id={self.id})"


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COUNTERCLOCKWISE = 1

    def __neg__(self):
        return Orientation(-int(self))


def as_exact(value) -> int | Fraction:
    """Convert ``value`` to an exact rational without rounding.

    Floats are converted bit-exactly; strings are parsed as decimals.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_exact(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return as_exact(Fraction(value.strip()))
    try:
        f = Fraction(value)
    except (TypeError, ValueError, OverflowError) as exc:
        raise ValueError(f"cannot represent {value!r} exactly") from exc
    return f.numerator if f.denominator == 1 else f


def cross(a: Point, b: Point, c: Point):
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> Orientation:
    """Orientation of the triple (a, b, c).

    Raises :class:`DegenerateInputError` for coincident or collinear input.
    """
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    raise DegenerateInputError(f"degenerate triple {a!r}, {b!r}, {c!r}")


def left_of(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies strictly left of the directed line a -> b."""
    return orient(a, b, p) is Orientation.COUNTERCLOCKWISE


def in_triangle(p: Point, t: Point, u: Point, v: Point) -> bool:
    """True iff p is strictly inside triangle tuv.

    The triangle may be given in either orientation; boundary points are
    outside.
    """
    d1 = cross(t, u, p)
    d2 = cross(u, v, p)
    d3 = cross(v, t, p)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def shoelace_term(a: Point, b: Point):
    """Signed shoelace contribution of the directed edge a -> b.

    ``1/2 (a.y * b.x - a.x * b.y)``; sums to the area of a clockwise cycle.
    """
    return Fraction(a.y * b.x - a.x * b.y, 2)


def polygon_area(vertices: Sequence[Point]):
    """Area of a simple polygon given in either cyclic order (shoelace formula)."""
    m = len(vertices)
    if m < 3:
        raise TooFewPointsError(f"polygon needs at least 3 vertices, got {m}")
    s = 0
    prev = vertices[-1]
    for cur in vertices:
        s += prev.y * cur.x - prev.x * cur.y
        prev = cur
    return abs(Fraction(s, 2)) if not isinstance(s, Fraction) else abs(s / 2)


def _direction_key(dx, dy):
    if isinstance(dx, int) and isinstance(dy, int):
        g = gcd(dx, dy)
        dx //= g
        dy //= g
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        return dx, dy
    if dx == 0:
        return None
    return Fraction(dy) / Fraction(dx)


def _integer_coords(points):
    den = 1
    for p in points:
        for c in (p.x, p.y):
            if isinstance(c, Fraction) and c.denominator != 1:
                den = lcm(den, c.denominator)
    return [(int(p.x * den), int(p.y * den)) for p in points]


def find_collinear_triple(points: Sequence[Point]):
    """Return some exactly collinear triple of ``points``, or None.

    Hashes the reduced direction from each point to every later one, so the
    scan is O(n^2) rather than O(n^3).  Coincident points count as collinear.
    """
    n = len(points)
    xy = _integer_coords(points)
    big = max((max(abs(x), abs(y)) for x, y in xy), default=0)
    if big < 2**61:
        return _collinear_numpy(points, xy)
    for i in range(n - 2):
        px, py = xy[i]
        seen = {}
        for j in range(i + 1, n):
            dx = xy[j][0] - px
            dy = xy[j][1] - py
            if dx == 0 and dy == 0:
                k = j + 1 if j + 1 < n else i + 1
                return points[i], points[j], points[k]
            key = _direction_key(dx, dy)
            other = seen.get(key)
            if other is not None:
                return points[i], points[other], points[j]
            seen[key] = j
    return None


def _collinear_numpy(points, xy):
    n = len(points)
    arr = np.array(xy, dtype=np.int64).reshape(-1, 2)
    for i in range(n - 2):
        d = arr[i + 1:] - arr[i]
        dx = d[:, 0]
        dy = d[:, 1]
        zero = (dx == 0) & (dy == 0)
        if zero.any():
            j = i + 1 + int(np.argmax(zero))
            k = j + 1 if j + 1 < n else i + 1
            return points[i], points[j], points[k]
        g = np.gcd(dx, dy)
        dx = dx // g
        dy = dy // g
        flip = (dx < 0) | ((dx == 0) & (dy < 0))
        dx = np.where(flip, -dx, dx)
        dy = np.where(flip, -dy, dy)
        keys = np.stack((dx, dy), axis=1)
        _, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
        dup = np.nonzero(counts > 1)[0]
        if dup.size:
            key = keys[first[dup[0]]]
            js = np.nonzero((keys == key).all(axis=1))[0][:2]
            return points[i], points[i + 1 + int(js[0])], points[i + 1 + int(js[1])]
    return None


def _min_gap(values: Iterable):
    vals = sorted(set(values))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else None


def _perturb(points: Sequence[Point], rng: random.Random):
    gx = _min_gap(p.x for p in points)
    gy = _min_gap(p.y for p in points)
    gap = min(g for g in (gx, gy, 1) if g is not None)
    # |offset| <= gap / 4, strictly below half the smallest coordinate gap
    unit = Fraction(gap) / (4 * _PERTURB_RESOLUTION)
    out = []
    offsets = {}
    for p in points:
        dx = rng.randint(-_PERTURB_RESOLUTION, _PERTURB_RESOLUTION) * unit
        dy = rng.randint(-_PERTURB_RESOLUTION, _PERTURB_RESOLUTION) * unit
        offsets[p.id] = (dx, dy)
        out.append(Point(as_exact(p.x + dx), as_exact(p.y + dy), p.id))
    return out, offsets


def canonicalize(points: Sequence[Point], seed: int = 0, *, force: bool = False,
                 return_offsets: bool = False):
    """Drop duplicates and perturb collinear input into general position.

    Duplicates keep their lowest id.  When an exactly collinear triple exists
    (or ``force`` is set) every point is shifted by a seed-determined rational
    offset smaller than a quarter of the minimum nonzero coordinate gap, and
    the check is repeated until it passes.  Sets larger than
    ``COLLINEAR_CHECK_LIMIT`` are only perturbed when ``force`` is given.

    With ``return_offsets`` the result is ``(points, offsets)`` where
    ``offsets`` maps point id to the applied ``(dx, dy)``.
    """
    by_xy = {}
    for p in sorted(points, key=lambda q: q.id):
        by_xy.setdefault((p.x, p.y), p)
    kept = sorted(by_xy.values(), key=lambda q: q.id)
    if len(kept) < 3:
        raise TooFewPointsError(f"need at least 3 distinct points, got {len(kept)}")

    offsets = {}
    checkable = len(kept) <= COLLINEAR_CHECK_LIMIT
    needs = force or (checkable and find_collinear_triple(kept) is not None)
    attempt = 0
    while needs:
        rng = random.Random(f"hullpeel-perturb:{seed}:{attempt}")
        kept, step = _perturb(kept, rng)
        for pid, (dx, dy) in step.items():
            ox, oy = offsets.get(pid, (0, 0))
            offsets[pid] = (ox + dx, oy + dy)
        attempt += 1
        needs = checkable and find_collinear_triple(kept) is not None
    if return_offsets:
        return kept, offsets
    return kept
