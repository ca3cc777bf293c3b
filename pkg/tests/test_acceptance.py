"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are also
collected into the terminal summary.
"""
import random
import statistics
import sys
import time
from fractions import Fraction

import pytest

from hullpeel.baselines import layer_peel
from hullpeel.bench import time_full_peel
from hullpeel.center import CenterHull
from hullpeel.generators import disk, fig2, fig3
from hullpeel.geometry import Point, canonicalize, cross, in_triangle
from hullpeel.hull import HullChain, hull_cw, layer_lists
from hullpeel.oracles import exact_k_peel, hull_area, naive_weighted_peel
from hullpeel.peeler import PeelState, compute_sensitivity, gift_wrap_active, peel_points, run, to_grid

from conftest import random_points

RESULTS = {}


def report(num, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {num}. {name}: {detail}"
    RESULTS[num] = line
    print(line, file=sys.__stdout__, flush=True)
    return ok


def instance(seed, n, span=10**4):
    return random_points(random.Random(f"accept:{seed}"), n, span)


# 1 ---------------------------------------------------------------------------

def test_1_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(1)
    bad = []
    checked = 0
    for i in range(500):
        n = rng.randint(3, 64)
        pts = instance(("oracle", i), n, span=rng.choice([20, 1000, 10**6]))
        for obj in ("area", "perimeter", "count"):
            mine = [e.key() for e in run(pts, obj, engine="python").events]
            ref = [e.key() for e in naive_weighted_peel(pts, obj).events]
            checked += 1
            if mine != ref:
                bad.append((i, obj))
    wall = time.perf_counter() - t0
    ok = not bad and wall < 120
    report(1, "oracle equivalence", ok,
           f"{checked - len(bad)}/{checked} traces identical in {wall:.1f}s (limit 120s)")
    assert not bad, bad[:5]
    assert wall < 120


# 2 ---------------------------------------------------------------------------

def test_2_activation_bound():
    t0 = time.perf_counter()
    worst = 0.0
    worst_member = 0
    bad = []
    for i in range(100):
        n = round(10 ** (1 + 3 * i / 99))
        pts = instance(("bound", i), n, span=10**7)
        st = run(pts, "area", check=True).stats
        worst = max(worst, st["activations"] / n)
        worst_member = max(worst_member, st["max_membership"])
        if st["activations"] > 3 * n or st["max_membership"] > 3:
            bad.append(n)
    wall = time.perf_counter() - t0
    ok = not bad and wall < 300
    report(2, "3n activation bound", ok,
           f"max activations/n = {worst:.3f} (limit 3), max arc membership = "
           f"{worst_member} (limit 3), 100 instances n=10..10^4 in {wall:.1f}s")
    assert not bad
    assert wall < 300


# 3 ---------------------------------------------------------------------------

def _layers(points, live):
    out = {}
    for k, ring in enumerate(layer_lists([points[i] for i in live]), start=1):
        for p in ring:
            out[p.id] = k
    return out


def _invariant_checks(st, points):
    """Run one instance to the end, checking every structural invariant after each peel."""
    live = set(points)
    layer = _layers(points, live)
    active_ever = set()
    fails = []
    while not st.finished:
        outer = st.outer_ids()
        node = {pid: st.L1.node(pid) for pid in outer}
        before = {pid: st.sens[pid] for pid in outer}
        uid = min(outer, key=lambda i: (st._key(st.sens[i]), i))
        t = st.L1.pred(node[uid]).point.id
        v = st.L1.succ(node[uid]).point.id
        point, _, _ = st.peel()
        assert point.id == uid
        live.discard(uid)
        if st.finished:
            break
        new_layer = _layers(points, live)
        for pid in live:
            if new_layer[pid] not in (layer[pid], layer[pid] - 1):
                fails.append("layer monotonicity")
        layer = new_layer
        for pid in outer:
            if pid in (uid, t, v) or pid not in st.L1:
                continue
            if st.sens[pid] != before[pid]:
                fails.append("only neighbours change")
        now = st.outer_ids()
        arcs = {}
        for i, pid in enumerate(now):
            arc = st.active_points(pid)
            if arc != gift_wrap_active(st, pid):
                fails.append("arc equals recomputation")
            nd = st.L1.node(pid)
            tp, vp = st.L1.pred(nd).point, st.L1.succ(nd).point
            if not all(in_triangle(p, tp, nd.point, vp) for p in arc):
                fails.append("still in triangle")
            arcs[pid] = {p.id for p in arc}
        for i, pid in enumerate(now):
            if len(arcs[pid] & arcs[now[i - 1]]) > 1:
                fails.append("arc intersection <= 1")
        current = set().union(*arcs.values()) if arcs else set()
        on_l1 = set(now)
        for pid in active_ever:
            if pid in live and pid not in on_l1 and pid not in current:
                fails.append("still active")
        active_ever = {p for p in active_ever | current if p not in on_l1}
    return fails


def test_3_invariant_suite():
    t0 = time.perf_counter()
    rng = random.Random(3)
    failures = {}
    for i in range(100):
        n = rng.randint(5, 200)
        pts, _ = to_grid(instance(("invariant", i), n))
        st = PeelState(pts, "area", check=True)
        for f in _invariant_checks(st, {p.id: p for p in pts}):
            failures[f] = failures.get(f, 0) + 1
    wall = time.perf_counter() - t0
    ok = not failures
    report(3, "invariant suite", ok,
           "layer monotonicity, only-neighbours-change, arc intersection <= 1, "
           f"still-in-triangle, still-active on 100 instances in {wall:.1f}s"
           + ("" if ok else f"; failures {failures}"))
    assert not failures, failures


# 4 ---------------------------------------------------------------------------

def test_4_incremental_equals_scratch():
    rng = random.Random(4)
    checks = 0
    bad = []
    for obj in ("area", "perimeter", "count"):
        for i in range(30):
            n = rng.randint(3, 200)
            pts, _ = to_grid(instance(("incr", obj, i), n))
            st = PeelState(pts, obj)
            while not st.finished:
                st.peel()
                if st.finished:
                    break
                for pid in st.outer_ids():
                    checks += 1
                    if st.sens[pid] != compute_sensitivity(st, pid):
                        bad.append((obj, i, st.step, pid))
    ok = not bad
    report(4, "incremental = scratch", ok,
           f"{checks - len(bad)}/{checks} maintained values equal recomputation "
           "(90 instances, all three objectives)")
    assert not bad, bad[:5]


# 5 ---------------------------------------------------------------------------

def test_5_area_telescoping():
    rng = random.Random(5)
    prefixes = 0
    bad = 0
    for i in range(60):
        n = rng.randint(3, 200)
        pts = instance(("tele", i), n)
        if i % 3 == 0:
            # rational coordinates
            pts = [Point(Fraction(p.x, 7), Fraction(p.y, 3), p.id) for p in pts]
        start = hull_area(pts)
        live = {p.id: p for p in pts}
        total = 0
        for e in run(pts, "area").events:
            total += e.sensitivity
            del live[e.peeled.id]
            prefixes += 1
            if total != start - hull_area(list(live.values())):
                bad += 1
    ok = bad == 0
    report(5, "area telescoping", ok,
           f"{prefixes - bad}/{prefixes} prefixes exact (60 instances)")
    assert bad == 0


# 6 ---------------------------------------------------------------------------

def test_6_k_peel_dominance():
    strict = 0
    violations = 0
    for seed in range(20):
        pts, meta = fig2(12, outliers=2, seed=seed)
        k = len(meta["planted"])
        trace, _ = peel_points(pts, "area", k, seed=seed)
        gone = set(trace.peeled_ids())
        weighted = hull_area([p for p in pts if p.id not in gone])
        _, exact = exact_k_peel(pts, k)
        if exact > weighted:
            violations += 1
        elif exact < weighted:
            strict += 1
    ok = violations == 0 and strict >= 15
    report(6, "k-peel dominance", ok,
           f"exact <= weighted on {20 - violations}/20, strict on {strict}/20 (need 15)")
    assert violations == 0
    assert strict >= 15


# 7 ---------------------------------------------------------------------------

def test_7_outlier_recall():
    wins = 0
    w_total = l_total = 0
    for seed in range(50):
        pts, meta = fig3(1000, outliers=3, seed=seed)
        planted = set(meta["planted"])
        k = len(planted)
        trace, canon = peel_points(pts, "area", k, seed=seed)
        w = len(planted & set(trace.peeled_ids()))
        lp = len(planted & set(layer_peel(canon, k).peeled_ids()))
        w_total += w
        l_total += lp
        wins += w > lp
    ok = wins >= 45
    report(7, "outlier recall", ok,
           f"weighted beats layer_peel on {wins}/50 (need 45); mean recall "
           f"{w_total / (50 * 12):.3f} vs {l_total / (50 * 12):.3f} at k = 12")
    assert wins >= 45


# 8 ---------------------------------------------------------------------------

def _disk_points(n):
    pts, _ = disk(n, seed=0)
    return canonicalize(pts, 0)


def test_8_scaling():
    warm = _disk_points(3000)
    run(warm, "area")
    times = {}
    traces = {}
    for n in (10**5, 2 * 10**5):
        pts = _disk_points(n)
        samples = []
        for _ in range(3):
            t, tr = time_full_peel(pts)
            samples.append(t)
        times[n] = statistics.median(samples)
        traces[n] = tr
    ratio = times[2 * 10**5] / times[10**5]
    big = _disk_points(10**6)
    t_big, tr_big = time_full_peel(big)
    per_call = all(
        tr.stats["restore_queries"] == 2 * tr.stats["restore_points"] + tr.stats["restore_calls"]
        for tr in (*traces.values(), tr_big))
    # per-call check: the python engine raises when a call deviates from 2k + 1
    small = _disk_points(20000)
    st = run(small, "area", check=True, engine="python").stats
    per_call = per_call and st["restore_calls"] > 0
    ok = ratio <= 2.4 and t_big < 60 and per_call
    report(8, "scaling", ok,
           f"t(2e5)/t(1e5) = {ratio:.2f} (limit 2.4; medians {times[10**5]:.2f}s, "
           f"{times[2 * 10**5]:.2f}s), t(1e6) = {t_big:.1f}s (limit 60s), "
           f"restore queries = 2k+1 per call: {per_call} "
           f"[engine {tr_big.stats['engine']}]")
    assert ratio <= 2.4
    assert t_big < 60
    assert per_call


# 9 ---------------------------------------------------------------------------

def _scan_tangent(ring, q, side):
    sign = -1 if side == "right" else 1
    for v in ring:
        if all(sign * cross(q, v, w) > 0 for w in ring if w is not v):
            return v
    return None


def _scan_extreme(ring, d):
    return max(ring, key=lambda p: (d[0] * p.x + d[1] * p.y, d[0] * p.y - d[1] * p.x))


def test_9_query_correctness():
    rng = random.Random(9)
    done = 0
    bad = 0
    while done < 10**4:
        pts = random_points(rng, rng.randint(3, 400), span=rng.choice([50, 10**4, 10**9]))
        ring = hull_cw(pts)
        chain = HullChain(ring, seed=rng.randint(0, 99))
        center = CenterHull(pts)
        span = int(max(max(abs(p.x), abs(p.y)) for p in pts) * 2) + 1
        for _ in range(50):
            kind = rng.randrange(3)
            if kind == 0:
                q = Point(rng.randint(-span, span), rng.randint(-span, span))
                if all(cross(ring[i - 1], ring[i], q) < 0 for i in range(len(ring))):
                    continue
                if any(cross(q, a, b) == 0 for a in ring for b in ring if a is not b):
                    continue
                side = rng.choice(["left", "right"])
                ok = chain.tangent(q, side).point == _scan_tangent(ring, q, side)
            elif kind == 1:
                d = (rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
                if d == (0, 0):
                    continue
                ok = chain.extreme(d).point == _scan_extreme(ring, d)
            else:
                a = Point(rng.randint(-span, span), rng.randint(-span, span))
                b = Point(rng.randint(-span, span), rng.randint(-span, span))
                if a == b:
                    continue
                got = center.extreme_beyond(a, b)
                beyond = [p for p in pts if cross(a, b, p) > 0]
                if not beyond:
                    ok = got is None
                else:
                    nx, ny = a.y - b.y, b.x - a.x
                    best = max(nx * p.x + ny * p.y for p in beyond)
                    ok = got is not None and cross(a, b, got) > 0 and \
                        nx * got.x + ny * got.y == best
            done += 1
            bad += not ok
    passed = bad == 0
    report(9, "query correctness", passed,
           f"{done - bad}/{done} tangent/extreme/extreme-beyond queries match linear scans")
    assert bad == 0
