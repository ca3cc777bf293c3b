"""Slow reference implementations used to validate the fast peeler."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import InstanceTooLargeError, TooFewPointsError
from .geometry import Point
from .hull import hull_cw
from .objectives import RootSum, get_objective
from .peeler import PeelEvent, to_grid

__all__ = [
    "OracleTrace",
    "naive_weighted_peel",
    "exact_k_peel",
    "brute_layer_index",
    "hull_area",
    "hull_objective",
    "better",
]

EXACT_LIMIT = 10**6


@dataclass
class OracleTrace:
    events: list
    method: str
    objective: str | None = None

    def __len__(self):
        return len(self.events)

    def peeled_ids(self) -> list:
        return [e.peeled.id for e in self.events]


def _doubled_area(ring):
    if len(ring) < 3:
        return 0
    s = 0
    prev = ring[-1]
    for cur in ring:
        s += prev.y * cur.x - prev.x * cur.y
        prev = cur
    return s


def _perimeter(ring):
    if len(ring) < 2:
        return RootSum(0, {})
    total = RootSum(0, {})
    prev = ring[-1]
    for cur in ring:
        dx = cur.x - prev.x
        dy = cur.y - prev.y
        total = total + RootSum.sqrt(dx * dx + dy * dy)
        prev = cur
    return total


def hull_area(points: Sequence[Point]) -> Fraction:
    """Area of the convex hull of ``points`` (0 for fewer than 3)."""
    ring = hull_cw(points)
    return Fraction(_doubled_area(ring), 2)


def hull_objective(kind, ring):
    """Objective of a clockwise hull ring in grid units (doubled for area)."""
    if kind == "area":
        return _doubled_area(ring)
    if kind == "perimeter":
        return _perimeter(ring)
    return len(ring)


def better(kind, value, pid, best_value, best_id) -> bool:
    """Peel order: larger sensitivity first, ties to the lower id."""
    if best_id is None:
        return True
    if kind == "perimeter":
        c = (value - best_value).sign()
    else:
        c = (value > best_value) - (value < best_value)
    return c > 0 or (c == 0 and pid < best_id)


def _without(points, pid):
    return [p for p in points if p.id != pid]


def _active_sets(pts, ring):
    """A(w) for every hull vertex w, by recomputing hull(pts - w)."""
    on_hull = {p.id for p in ring}
    out = {}
    for w in ring:
        sub = hull_cw(_without(pts, w.id), presorted=True)
        out[w.id] = [p for p in sub if p.id not in on_hull]
    return out


def naive_weighted_peel(points: Sequence[Point], objective="area",
                        k: int | None = None) -> OracleTrace:
    """Greedy peel by full recomputation at every step.

    For each candidate hull vertex the hull of the remaining points is
    rebuilt and the objective drop measured directly.  Sensitivities are
    reported in the input's units; ties go to the lower id.
    """
    obj = get_objective(objective)
    kind = obj.kind
    original = {p.id: p for p in points}
    grid, scale = to_grid(list(points))
    pts = sorted(grid, key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        raise TooFewPointsError(f"need at least 3 points, got {len(pts)}")
    limit = len(pts) - 2 if k is None else k
    events = []
    ring = hull_cw(pts, presorted=True)
    active = _active_sets(pts, ring)
    while len(events) < limit and len(pts) >= 3:
        base = hull_objective(kind, ring)
        best_id = best_val = None
        for w in ring:
            sub = hull_cw(_without(pts, w.id), presorted=True)
            if kind == "count":
                val = len(active[w.id]) + 1
            else:
                # a two-point hull counts as a segment traversed both ways
                val = base - hull_objective(kind, sub)
            if better(kind, val, w.id, best_val, best_id):
                best_id, best_val = w.id, val
        pts = _without(pts, best_id)
        if len(pts) >= 3:
            new_ring = hull_cw(pts, presorted=True)
            new_active = _active_sets(pts, new_ring)
            newly = sum(len({p.id for p in acts} - {p.id for p in active.get(w, [])})
                        for w, acts in new_active.items())
            inner = hull_cw([p for p in pts if p.id not in {q.id for q in new_ring}],
                            presorted=True)
            l1, l2 = len(new_ring), len(inner)
            ring, active = new_ring, new_active
        else:
            newly, l1, l2 = 0, len(pts), 0
        events.append(PeelEvent(
            step=len(events) + 1,
            peeled=original[best_id],
            sensitivity=obj.report(best_val, scale),
            newly_active=newly,
            l1_size_after=l1,
            l2_size_after=l2,
        ))
    return OracleTrace(events=events, method="naive_weighted", objective=kind)


def exact_k_peel(points: Sequence[Point], k: int):
    """Remove the k points that minimise the remaining hull area.

    Exhaustive over all C(n, k) subsets (at most ``EXACT_LIMIT``).  Returns
    ``(removed_points, remaining_area)``; ties go to the lexicographically
    smallest id tuple.
    """
    pts = list(points)
    n = len(pts)
    if k < 0 or k > n:
        raise ValueError(f"k must be in [0, {n}]")
    combos = math.comb(n, k)
    if combos > EXACT_LIMIT:
        raise InstanceTooLargeError(
            f"C({n}, {k}) = {combos} subsets exceeds the limit of {EXACT_LIMIT}",
            combinations=combos)
    grid, scale = to_grid(pts)
    order = sorted(range(n), key=lambda i: pts[i].id)
    srt = sorted(range(n), key=lambda i: (grid[i].x, grid[i].y))
    best = None
    best_area = None
    for subset in itertools.combinations(order, k):
        drop = set(subset)
        ring = hull_cw([grid[i] for i in srt if i not in drop], presorted=True)
        area = _doubled_area(ring)
        if best_area is None or area < best_area:
            best_area = area
            best = subset
    removed = [pts[i] for i in best]
    return removed, Fraction(best_area, 2 * scale * scale)


def brute_layer_index(points: Sequence[Point], p) -> int:
    """1-based onion layer of ``p`` by repeated hull extraction."""
    pid = p if isinstance(p, int) else p.id
    remaining = sorted(points, key=lambda q: (q.x, q.y))
    if pid not in {q.id for q in remaining}:
        raise KeyError(pid)
    layer = 1
    while remaining:
        ring = hull_cw(remaining, presorted=True)
        ids = {q.id for q in ring}
        if pid in ids:
            return layer
        remaining = [q for q in remaining if q.id not in ids]
        layer += 1
    raise KeyError(pid)
