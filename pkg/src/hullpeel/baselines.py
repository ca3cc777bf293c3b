"""Competing peeling heuristics: distance-to-mean and layer-by-layer."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Point
from .hull import hull_cw, layer_lists

__all__ = ["BaselineTrace", "distance_peel", "layer_peel", "METRICS"]

METRICS = ("euclidean", "squared", "manhattan")


@dataclass
class BaselineTrace:
    removed: list
    method: str
    metric: str | None = None

    def __len__(self):
        return len(self.removed)

    def peeled_ids(self) -> list:
        return [p.id for p in self.removed]


def _check_k(k, n):
    if k < 0 or k > n:
        raise ValueError(f"k must be in [0, {n}], got {k}")


def _score(metric, dx, dy):
    # dx, dy are offsets scaled by the point count; scaling keeps the order
    if metric == "manhattan":
        return abs(dx) + abs(dy)
    # euclidean and squared rank identically
    return dx * dx + dy * dy


def distance_peel(points: Sequence[Point], metric: str = "euclidean", k: int = 1,
                  *, hull_only: bool = True) -> BaselineTrace:
    """Repeatedly remove the point farthest from the mean of the remaining points.

    Candidates are the current hull vertices (all remaining points when
    ``hull_only`` is false or fewer than three remain).  The mean is kept as
    a running coordinate sum, so each step costs one hull scan.  Ties go to
    the lowest id.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    pts = sorted(points, key=lambda p: (p.x, p.y))
    _check_k(k, len(pts))
    sx = sum(p.x for p in pts)
    sy = sum(p.y for p in pts)
    removed = []
    for _ in range(k):
        m = len(pts)
        cands = hull_cw(pts, presorted=True) if hull_only and m >= 3 else pts
        best = None
        best_key = None
        for p in cands:
            key = (_score(metric, m * p.x - sx, m * p.y - sy), -p.id)
            if best_key is None or key > best_key:
                best, best_key = p, key
        removed.append(best)
        pts = [p for p in pts if p.id != best.id]
        sx -= best.x
        sy -= best.y
    return BaselineTrace(removed=removed, method="distance_mean", metric=metric)


def layer_peel(points: Sequence[Point], k: int) -> BaselineTrace:
    """Remove whole convex layers from the outside in.

    Within a layer, points go in clockwise order starting from the vertex
    with the lowest id.  Stops after ``k`` removals.
    """
    pts = list(points)
    _check_k(k, len(pts))
    removed = []
    if k == 0:
        return BaselineTrace(removed=removed, method="layer_peel")
    for ring in layer_lists(pts):
        start = min(range(len(ring)), key=lambda i: ring[i].id)
        for p in ring[start:] + ring[:start]:
            removed.append(p)
            if len(removed) == k:
                return BaselineTrace(removed=removed, method="layer_peel")
    return BaselineTrace(removed=removed, method="layer_peel")
