"""Empirical scaling harness for full peels."""
from __future__ import annotations

import statistics
import time
from typing import Sequence

from .generators import disk
from .geometry import canonicalize
from .peeler import run

__all__ = ["bench", "time_full_peel"]


def time_full_peel(points, objective="area", engine="auto", seed=0):
    """Wall time (seconds) and trace of one full peel of canonical points."""
    t0 = time.perf_counter()
    trace = run(points, objective, seed=seed, engine=engine)
    return time.perf_counter() - t0, trace


def bench(sizes: Sequence[int], seed: int = 0, objective: str = "area",
          repeats: int = 1, engine: str = "auto", warmup: bool = True) -> dict:
    """Full-peel wall times on uniform-disk instances.

    For each size: median and coefficient of variation of the wall time over
    ``repeats`` runs, plus the instrumentation counters of the last run and
    the checks activations <= 3n and restore queries = 2k + 1 per call.
    ``ratios`` compares each size with the previous one.
    """
    sizes = [int(s) for s in sizes]
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be ascending")
    if warmup:
        # first compiled call pays for loading the cached machine code
        pts, _ = disk(3000, seed=seed)
        run(canonicalize(pts, seed), objective, k=10, engine=engine)
    rows = []
    for n in sizes:
        pts, _ = disk(n, seed=seed)
        pts = canonicalize(pts, seed)
        times = []
        trace = None
        for _ in range(max(1, repeats)):
            t, trace = time_full_peel(pts, objective, engine, seed)
            times.append(t)
        st = trace.stats
        mean = statistics.fmean(times)
        cv = statistics.stdev(times) / mean if len(times) > 1 and mean > 0 else 0.0
        restore_ok = st.get("restore_queries", 0) == \
            2 * st.get("restore_points", 0) + st.get("restore_calls", 0)
        rows.append({
            "n": len(pts),
            "times_s": times,
            "median_s": statistics.median(times),
            "cv": cv,
            "engine": st.get("engine"),
            "peels": len(trace.events),
            "activations": st.get("activations"),
            "activations_ok": st.get("activations", 0) <= 3 * len(pts),
            "restore_calls": st.get("restore_calls"),
            "restore_queries": st.get("restore_queries"),
            "restore_ok": restore_ok,
        })
    ratios = []
    for a, b in zip(rows, rows[1:]):
        ratios.append({
            "from": a["n"],
            "to": b["n"],
            "size_ratio": b["n"] / a["n"],
            "time_ratio": b["median_s"] / a["median_s"] if a["median_s"] else None,
        })
    return {"objective": objective, "seed": seed, "repeats": repeats,
            "rows": rows, "ratios": ratios}
