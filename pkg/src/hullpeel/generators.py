"""Seeded instance generators.

Every generator returns ``(points, meta)``: points with decimal coordinates
(exact ints or Fractions) and ids in row order, and a metadata dict whose
``"planted"`` entry lists the ids of the planted outliers.  Output depends
only on the arguments.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .geometry import Point

__all__ = ["disk", "fig2", "fig3", "grid", "generate", "KINDS"]


def _rng(kind, seed):
    return random.Random(f"hullpeel-{kind}:{seed}")


def _dec(value: float, decimals: int):
    """Round a float to a decimal grid; exact int or Fraction result."""
    scale = 10 ** decimals
    q = round(value * scale)
    return Fraction(q, scale) if q % scale else q // scale


def _disk_xy(rng, radius=1.0):
    while True:
        x = rng.uniform(-1.0, 1.0)
        y = rng.uniform(-1.0, 1.0)
        if x * x + y * y <= 1.0:
            return radius * x, radius * y


def _finish(xy, planted, meta, decimals, rng):
    """Round, shuffle rows, assign ids; ``planted`` indexes into ``xy``."""
    order = list(range(len(xy)))
    rng.shuffle(order)
    pts = []
    where = {}
    for new_id, old in enumerate(order):
        x, y = xy[old]
        pts.append(Point(_dec(x, decimals), _dec(y, decimals), new_id))
        where[old] = new_id
    meta = dict(meta)
    for key, idxs in list(meta.items()):
        if key.endswith("_idx"):
            meta[key[:-4]] = sorted(where[i] for i in idxs)
            del meta[key]
    meta["planted"] = sorted(where[i] for i in planted)
    return pts, meta


def disk(n: int, seed: int = 0, decimals: int = 8):
    """n points uniform in the unit disk."""
    rng = _rng("disk", seed)
    xy = [_disk_xy(rng) for _ in range(n)]
    pts = [Point(_dec(x, decimals), _dec(y, decimals), i) for i, (x, y) in enumerate(xy)]
    return pts, {"kind": "disk", "n": n, "seed": seed, "planted": []}


def fig2(n: int = 12, outliers: int = 2, seed: int = 0, decimals: int = 6):
    """A unit-square cluster of n points plus ``outliers`` far, tight pairs.

    Each pair sits about 10 units from the cluster with its two points 0.1
    apart, so removing either point alone barely shrinks the hull.
    """
    rng = _rng("fig2", seed)
    xy = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(n)]
    planted = []
    base = rng.uniform(0, 2 * math.pi)
    for j in range(outliers):
        ang = base + 2 * math.pi * j / max(outliers, 1) + rng.uniform(-0.3, 0.3)
        cx = 0.5 + 10 * math.cos(ang)
        cy = 0.5 + 10 * math.sin(ang)
        tilt = rng.uniform(0, math.pi)
        for s in (-0.05, 0.05):
            planted.append(len(xy))
            xy.append((cx + s * math.cos(tilt), cy + s * math.sin(tilt)))
    return _finish(xy, planted, {"kind": "fig2", "n": n, "outliers": outliers,
                                 "seed": seed}, decimals, rng)


def fig3(n: int = 1000, outliers: int = 3, seed: int = 0, decimals: int = 8):
    """Uniform disk plus ``outliers`` shielded spikes.

    Each spike has two shield points at radius 2 flanking an outlier at
    radius 1.6 (inside the shields' hull, so on the second layer) and a
    second outlier at radius 1.3 behind it (third layer).  All four points
    of a spike are planted.
    """
    rng = _rng("fig3", seed)
    xy = [_disk_xy(rng) for _ in range(n)]
    planted = []
    deep = []
    shields = []
    base = rng.uniform(0, 2 * math.pi)
    for j in range(outliers):
        ang = base + 2 * math.pi * j / max(outliers, 1) + rng.uniform(-0.2, 0.2)
        for da in (-0.12, 0.12):
            shields.append(len(xy))
            planted.append(len(xy))
            xy.append((2.0 * math.cos(ang + da), 2.0 * math.sin(ang + da)))
        for r in (1.6, 1.3):
            deep.append(len(xy))
            planted.append(len(xy))
            jit = rng.uniform(-0.02, 0.02)
            xy.append((r * math.cos(ang + jit), r * math.sin(ang + jit)))
    return _finish(xy, planted, {"kind": "fig3", "n": n, "outliers": outliers,
                                 "seed": seed, "shields_idx": shields,
                                 "deep_idx": deep}, decimals, rng)


def grid(n: int, seed: int = 0):
    """About n integer lattice points (maximally degenerate input)."""
    side = max(2, math.isqrt(max(n, 4) - 1) + 1)
    pts = [Point(i % side, i // side, i) for i in range(n)]
    return pts, {"kind": "grid", "n": n, "seed": seed, "planted": []}


KINDS = {"disk": disk, "fig2": fig2, "fig3": fig3, "grid": grid}


def generate(kind: str, n: int, outliers: int | None = None, seed: int = 0):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind in ("fig2", "fig3"):
        kw = {} if outliers is None else {"outliers": outliers}
        return KINDS[kind](n, seed=seed, **kw)
    return KINDS[kind](n, seed=seed)
