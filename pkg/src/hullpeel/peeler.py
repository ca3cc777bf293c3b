"""Weighted hull peeling in O(n log n).

The engine keeps the two outer layers as :class:`HullChain` objects and every
other point in a :class:`CenterHull`.  Each vertex u of the outer layer owns
an arc A(u) of the second layer: the points that would join the hull if u were
removed.  Sensitivities are computed from u, its two neighbours and A(u); when
a vertex is peeled only its two neighbours and the newly promoted vertices
need new values, and the neighbours are updated by single-edge edits.
"""
from __future__ import annotations

import gc
import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .center import CenterHull
from .exceptions import (
    DegenerateInputError,
    EmptyQueueError,
    InvariantViolation,
    TooFewPointsError,
)
from .geometry import Point, canonicalize
from .hull import HullChain, hull_cw
from .objectives import Objective, RootSum, get_objective

# below this size the python engine is fast enough and starts quicker
COMPILED_MIN_N = 2000

__all__ = [
    "PeelEvent",
    "PeelTrace",
    "PeelState",
    "to_grid",
    "init",
    "compute_sensitivity",
    "peel_next",
    "update_neighbor_sensitivity",
    "gift_wrap_active",
    "run",
    "apply_edits",
    "peel_points",
]


@dataclass(frozen=True)
class PeelEvent:
    step: int
    peeled: Point
    sensitivity: object
    newly_active: int
    l1_size_after: int
    l2_size_after: int

    def key(self):
        """Fields compared by oracle equivalence checks."""
        return (self.step, self.peeled.id, self.sensitivity, self.newly_active,
                self.l1_size_after, self.l2_size_after)


@dataclass
class PeelTrace:
    events: list
    objective: str
    n: int
    k: int
    terminated: bool = False
    stats: dict = field(default_factory=dict)
    method: str = "weighted"

    def __len__(self):
        return len(self.events)

    def peeled_ids(self) -> list:
        return [e.peeled.id for e in self.events]


class _Desc:
    """Heap key ordering RootSum values descending by numeric value."""
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return (self.value - other.value).sign() > 0

    def __eq__(self, other):
        return (self.value - other.value).sign() == 0


def _grid_scale(points):
    dens = set()
    for p in points:
        if type(p.x) is not int:
            dens.add(p.x.denominator)
        if type(p.y) is not int:
            dens.add(p.y.denominator)
    den = 1
    for d in dens:
        den = lcm(den, d)
    return den


def _scaled(c, den):
    if type(c) is int:
        return c * den
    return c.numerator * (den // c.denominator)


def to_grid(points: Sequence[Point]):
    """Scale exact points onto a common integer grid.

    Returns ``(grid_points, scale)`` where each grid point has coordinates
    ``scale * original`` and the same id.
    """
    den = _grid_scale(points)
    if den == 1:
        return [p if type(p.x) is int and type(p.y) is int
                else Point(int(p.x), int(p.y), p.id) for p in points], 1
    return [Point(_scaled(p.x, den), _scaled(p.y, den), p.id) for p in points], den


def apply_edits(objective: Objective, value, edits):
    """Apply single-point edits to a sensitivity value.

    Each edit is one of

    * ``("add", a, p, b)``: p joins the chain between consecutive a and b;
    * ``("remove", a, p, b)``: p leaves the chain, a and b become consecutive;
    * ``("succ", w, old, new, c)``: w's clockwise neighbour changes from old
      to new, c being the last chain point before it;
    * ``("pred", w, old, new, c)``: w's counterclockwise neighbour changes, c
      being the first chain point after it.
    """
    d = objective.edge_fn()
    hc = objective.hull_coef
    cc = objective.chain_coef
    for e in edits:
        kind = e[0]
        if kind == "add":
            _, a, p, b = e
            value = value + cc * (d(a, p) + d(p, b) - d(a, b))
        elif kind == "remove":
            _, a, p, b = e
            value = value + cc * (d(a, b) - d(a, p) - d(p, b))
        elif kind == "succ":
            _, w, old, new, c = e
            if hc:
                value = value + hc * (d(w, new) - d(w, old))
            value = value + cc * (d(c, new) - d(c, old))
        elif kind == "pred":
            _, w, old, new, c = e
            if hc:
                value = value + hc * (d(new, w) - d(old, w))
            value = value + cc * (d(new, c) - d(old, c))
        else:
            raise ValueError(f"unknown edit {kind!r}")
    return value


class PeelState:
    """Mutable state of one peeling run.

    ``points`` must be in general position with distinct ids and integer
    coordinates (see :func:`to_grid`).  With ``check`` enabled the cheap
    invariants (arc membership at most 3, activations at most 3n, 2k+1 restore
    queries) raise :class:`InvariantViolation` when broken.
    """

    def __init__(self, points: Sequence[Point], objective="area", *,
                 check: bool = False, seed: int = 0):
        self.objective = get_objective(objective)
        self.check = check
        pts = list(points)
        if len(pts) < 3:
            raise TooFewPointsError(f"need at least 3 points, got {len(pts)}")
        self.n = len(pts)
        self.points = {p.id: p for p in pts}
        if len(self.points) != self.n:
            raise ValueError("duplicate point ids")
        self.remaining = self.n
        self.step = 0
        self.finished = False
        self.activations = 0
        self.restore_calls = 0
        self.restore_queries = 0
        self.restore_points = 0
        self.queue_sizes = []
        self.arc_start = {}
        self.arc_end = {}
        self.arc_len = {}
        self.sens = {}
        self.membership = {} if check else None
        self.max_membership = 0
        self._version = {}
        self._heap = []
        if self.objective.kind == "perimeter":
            self._key = _Desc
        else:
            self._key = lambda v: -v

        srt = sorted(pts, key=lambda p: (p.x, p.y))
        outer = hull_cw(srt, presorted=True)
        if len(outer) < 3:
            raise TooFewPointsError("points are collinear")
        on_outer = {p.id for p in outer}
        rest = [p for p in srt if p.id not in on_outer]
        second = hull_cw(rest, presorted=True)
        on_second = {p.id for p in second}
        self.L1 = HullChain(outer, seed=seed)
        self.L2 = HullChain(second, seed=seed + 1)
        self.center = CenterHull([p for p in rest if p.id not in on_second])

        hint_s = hint_e = None
        for node in list(self._l1_nodes()):
            s, e = self._fresh_arc(node, hint_s, hint_e)
            if s is not None:
                hint_s, hint_e = s, e
            self._set_arc(node.point.id, s, e, count_new=True)
            self._push(node.point.id, self._scratch_value(node))

    # -- helpers ----------------------------------------------------------
    def _l1_nodes(self):
        L1 = self.L1
        first = L1.first()
        node = first
        while True:
            yield node
            node = L1.succ(node)
            if node is first:
                return

    def _push(self, pid, value):
        self.sens[pid] = value
        ver = self._version.get(pid, 0) + 1
        self._version[pid] = ver
        heapq.heappush(self._heap, (self._key(value), pid, ver))

    def _set_arc(self, pid, start, end, count_new=False):
        if start is None:
            self.arc_start[pid] = self.arc_end[pid] = None
            self.arc_len[pid] = 0
            return 0
        pts = self.L2.arc(start, end)
        self.arc_start[pid] = start
        self.arc_end[pid] = end
        self.arc_len[pid] = len(pts)
        if count_new:
            self.activations += len(pts)
            if self.membership is not None:
                for p in pts:
                    self._member(p.id, 1)
        return len(pts)

    def _member(self, pid, delta):
        m = self.membership.get(pid, 0) + delta
        self.membership[pid] = m
        if m > self.max_membership:
            self.max_membership = m
        if m > 3:
            raise InvariantViolation(f"point {pid} is active for {m} hull vertices")

    def _fresh_arc(self, node, hint_s=None, hint_e=None):
        """Arc endpoints of A(u) from two tangent queries, or (None, None)."""
        L2 = self.L2
        if not L2:
            return None, None
        L1 = self.L1
        p = L1.pred(node).point
        s = L1.succ(node).point
        xs = L2.tangent(p, "right", hint_s)
        q = xs.point
        # active iff the tangent point is beyond chord p -> s (on u's side)
        if (s.x - p.x) * (q.y - p.y) - (s.y - p.y) * (q.x - p.x) <= 0:
            return None, None
        xe = L2.tangent(s, "left", hint_e if hint_e is not None else xs)
        return xs, xe

    def active_points(self, pid) -> list:
        """Current A(u) for the outer-layer vertex ``pid``, in clockwise order."""
        start = self.arc_start.get(pid)
        if start is None:
            return []
        return self.L2.arc(start, self.arc_end[pid])

    def _scratch_value(self, node):
        pid = node.point.id
        return self.objective.sensitivity(
            self.L1.pred(node).point, node.point, self.L1.succ(node).point,
            self.active_points(pid))

    # -- public queries ---------------------------------------------------
    def sensitivity(self, pid):
        return self.sens[pid]

    def outer_ids(self) -> list:
        return self.L1.ids()

    def second_ids(self) -> list:
        return self.L2.ids()

    def live_ids(self) -> set:
        out = set(self.L1.ids())
        out.update(self.L2.ids())
        out.update(p.id for p in self.center.live_points())
        return out

    def queue_ids(self) -> set:
        """Outer-layer ids with a current (non-stale) queue entry."""
        return {pid for _, pid, ver in self._heap
                if self._version.get(pid) == ver and pid in self.L1}

    # -- the peel ---------------------------------------------------------
    def _pop(self):
        heap = self._heap
        version = self._version
        L1 = self.L1
        while heap:
            _, pid, ver = heapq.heappop(heap)
            if version.get(pid) == ver and pid in L1:
                return pid
        raise EmptyQueueError("no vertex left to peel")

    def peel(self) -> tuple:
        """Peel the maximum-sensitivity vertex.

        Returns ``(point, value, newly_active)`` with the value in internal
        grid units.
        """
        if self.finished:
            raise EmptyQueueError("peeling has terminated")
        self.queue_sizes.append(len(self._heap))
        uid = self._pop()
        L1, L2, center = self.L1, self.L2, self.center
        value = self.sens.pop(uid)
        u_node = L1.node(uid)
        u = u_node.point
        t_node = L1.pred(u_node)
        v_node = L1.succ(u_node)
        start = self.arc_start.pop(uid)
        end = self.arc_end.pop(uid)
        self.arc_len.pop(uid)
        self._version.pop(uid, None)
        active = L2.arc(start, end) if start is not None else []
        if self.membership is not None:
            for p in active:
                self._member(p.id, -1)

        self.step += 1
        self.remaining -= 1
        L1.remove(u_node)
        new_nodes = L1.splice_in(t_node, active)

        if self.remaining < 3:
            self.finished = True
            self.sens.clear()
            self._heap.clear()
            return u, value, 0

        # restore the second layer where A(u) left it
        a_node = b_node = None
        if active:
            if len(active) == len(L2):
                L2.splice_out(start, end)
                self._rebuild_second()
            else:
                a_node = L2.pred(start)
                b_node = L2.succ(end)
                L2.splice_out(start, end)
                if center:
                    if a_node is b_node:
                        chain = self._bridge_single(a_node.point)
                    else:
                        before = center.extreme_queries
                        chain = center.restore_gap(a_node.point, b_node.point)
                        self.restore_calls += 1
                        self.restore_points += len(chain)
                        used = center.extreme_queries - before
                        self.restore_queries += used
                        if self.check and used != 2 * len(chain) + 1:
                            raise InvariantViolation(
                                f"restore_gap used {used} queries for {len(chain)} points")
                    L2.splice_in(a_node, chain)

        newly = 0
        # vertices promoted from the second layer get fresh arcs
        hint_s = a_node
        hint_e = a_node
        for node in new_nodes:
            s, e = self._fresh_arc(node, hint_s, hint_e)
            if s is not None:
                hint_s, hint_e = s, e
            newly += self._set_arc(node.point.id, s, e, count_new=True)
            self._push(node.point.id, self._scratch_value(node))

        newly += self._update_ccw_neighbour(t_node, u, active, a_node)
        newly += self._update_cw_neighbour(v_node, u, active, b_node)
        if self.check and self.activations > 3 * self.n:
            raise InvariantViolation(
                f"{self.activations} activations exceed 3n = {3 * self.n}")
        return u, value, newly

    def _rebuild_second(self):
        """Second layer was consumed entirely: it becomes the center's hull."""
        center = self.center
        if not center:
            return
        chain = center.outer_chain()
        for p in chain:
            center.delete(p)
        self.L2.splice_in(None, chain)

    def _bridge_single(self, a):
        """Second layer kept a single point a: rebuild hull({a} + center)."""
        center = self.center
        any_live = center.extreme((1, 0))
        z = center.extreme((any_live.x - a.x, any_live.y - a.y))
        center.delete(z)
        left = center.restore_gap(a, z)
        right = center.restore_gap(z, a)
        return left + [z] + right

    def _update_ccw_neighbour(self, t_node, u, active, a_node):
        """t was u's counterclockwise neighbour; its clockwise side changed."""
        L1, L2 = self.L1, self.L2
        tid = t_node.point.id
        t = t_node.point
        x = L1.succ(t_node).point
        te = self.arc_end.get(tid)
        ts = self.arc_start.get(tid)
        edits = []
        added = 0
        if te is not None and te.chain is None:
            # shared point: t's last active point became its new neighbour
            if not active or te.point.id != active[0].id:
                raise InvariantViolation("shared active point is not the arc end")
            if ts is te:
                prev = L1.pred(t_node).point
                self.arc_start[tid] = self.arc_end[tid] = None
                self.arc_len[tid] = 0
            else:
                # te opened A(u), so its old predecessor flanks the gap
                prev_node = a_node
                if prev_node is None or prev_node.chain is not L2:
                    raise InvariantViolation("arc predecessor left the second layer")
                prev = prev_node.point
                self.arc_end[tid] = prev_node
                self.arc_len[tid] -= 1
            if self.membership is not None:
                self._member(te.point.id, -1)
            edits.append(("remove", prev, te.point, u))
            edits.append(("succ", t, u, x, prev))
        elif te is not None:
            last = te.point
            edits.append(("succ", t, u, x, last))
            ne = L2.tangent(x, "left", te)
            if ne is not te:
                new_pts = L2.arc(L2.succ(te), ne)
                for p in new_pts:
                    edits.append(("add", last, p, x))
                    last = p
                added = len(new_pts)
                self.arc_end[tid] = ne
                self.arc_len[tid] += added
        else:
            prev = L1.pred(t_node).point
            edits.append(("succ", t, u, x, prev))
            s, e = self._fresh_arc(t_node)
            if s is not None:
                new_pts = L2.arc(s, e)
                last = prev
                for p in new_pts:
                    edits.append(("add", last, p, x))
                    last = p
                added = len(new_pts)
                self.arc_start[tid] = s
                self.arc_end[tid] = e
                self.arc_len[tid] = added
        if added:
            self.activations += added
            if self.membership is not None:
                for p in L2.arc(self.arc_start[tid], self.arc_end[tid])[-added:]:
                    self._member(p.id, 1)
        self._push(tid, apply_edits(self.objective, self.sens[tid], edits))
        return added

    def _update_cw_neighbour(self, v_node, u, active, b_node):
        """v was u's clockwise neighbour; its counterclockwise side changed."""
        L1, L2 = self.L1, self.L2
        vid = v_node.point.id
        v = v_node.point
        y = L1.pred(v_node).point
        vs = self.arc_start.get(vid)
        ve = self.arc_end.get(vid)
        edits = []
        added = 0
        if vs is not None and vs.chain is None:
            if not active or vs.point.id != active[-1].id:
                raise InvariantViolation("shared active point is not the arc start")
            if ve is vs:
                nxt = L1.succ(v_node).point
                self.arc_start[vid] = self.arc_end[vid] = None
                self.arc_len[vid] = 0
            else:
                nxt_node = b_node
                if nxt_node is None or nxt_node.chain is not L2:
                    raise InvariantViolation("arc successor left the second layer")
                nxt = nxt_node.point
                self.arc_start[vid] = nxt_node
                self.arc_len[vid] -= 1
            if self.membership is not None:
                self._member(vs.point.id, -1)
            edits.append(("remove", u, vs.point, nxt))
            edits.append(("pred", v, u, y, nxt))
        elif vs is not None:
            first = vs.point
            edits.append(("pred", v, u, y, first))
            ns = L2.tangent(y, "right", vs)
            if ns is not vs:
                new_pts = L2.arc(ns, L2.pred(vs))
                nxt = first
                for p in reversed(new_pts):
                    edits.append(("add", y, p, nxt))
                    nxt = p
                added = len(new_pts)
                self.arc_start[vid] = ns
                self.arc_len[vid] += added
        else:
            nxt = L1.succ(v_node).point
            edits.append(("pred", v, u, y, nxt))
            s, e = self._fresh_arc(v_node)
            if s is not None:
                new_pts = L2.arc(s, e)
                after = nxt
                for p in reversed(new_pts):
                    edits.append(("add", y, p, after))
                    after = p
                added = len(new_pts)
                self.arc_start[vid] = s
                self.arc_end[vid] = e
                self.arc_len[vid] = added
        if added:
            self.activations += added
            if self.membership is not None:
                for p in L2.arc(self.arc_start[vid], self.arc_end[vid])[:added]:
                    self._member(p.id, 1)
        self._push(vid, apply_edits(self.objective, self.sens[vid], edits))
        return added


# -- functional API -----------------------------------------------------------

def init(points: Sequence[Point], objective="area", **kwargs) -> PeelState:
    return PeelState(points, objective, **kwargs)


def compute_sensitivity(state: PeelState, u) -> object:
    """From-scratch sensitivity of outer vertex ``u`` (point or id)."""
    pid = u if isinstance(u, int) else u.id
    return state._scratch_value(state.L1.node(pid))


def update_neighbor_sensitivity(state: PeelState, w, edits) -> object:
    """Sensitivity of ``w`` after applying ``edits`` to its current value."""
    pid = w if isinstance(w, int) else w.id
    return apply_edits(state.objective, state.sens[pid], edits)


def gift_wrap_active(state: PeelState, u) -> list:
    """A(u) by gift wrapping from u's counterclockwise neighbour, ignoring u.

    O(|A(u)| * n); the reference the maintained arcs are checked against.
    """
    pid = u if isinstance(u, int) else u.id
    node = state.L1.node(pid)
    t = state.L1.pred(node).point
    v = state.L1.succ(node).point
    others = [state.points[i] for i in state.live_ids() if i != pid]
    out = []
    cur = t
    while True:
        best = None
        for r in others:
            if r is cur:
                continue
            if best is None:
                best = r
                continue
            c = (best.x - cur.x) * (r.y - cur.y) - (best.y - cur.y) * (r.x - cur.x)
            if c > 0:
                best = r
        if best is v or best is None:
            return out
        out.append(best)
        cur = best
        if len(out) > len(others):
            raise InvariantViolation("gift wrapping did not terminate")


def peel_next(state: PeelState, scale: int = 1) -> PeelEvent:
    point, value, newly = state.peel()
    return PeelEvent(
        step=state.step,
        peeled=point,
        sensitivity=state.objective.report(value, scale),
        newly_active=newly,
        l1_size_after=len(state.L1),
        l2_size_after=len(state.L2),
    )


def _compiled_ok(obj, check, on_step, engine, n):
    if engine == "python":
        return False
    if engine not in ("auto", "compiled"):
        raise ValueError(f"engine must be 'auto', 'python' or 'compiled', not {engine!r}")
    if engine == "auto" and n < COMPILED_MIN_N:
        return False
    why = None
    if obj.kind != "area":
        why = "the compiled engine supports the area objective only"
    elif check or on_step is not None:
        why = "instrumented runs need the python engine"
    else:
        try:
            from . import _fastpeel  # noqa: F401
        except ImportError:  # pragma: no cover - numba missing
            why = "numba is not available"
    if why is None:
        return engine == "compiled" or n >= COMPILED_MIN_N
    if engine == "compiled":
        raise ValueError(why)
    return False


def _run_compiled(pts, obj, limit, seed, t0, engine):
    """Run the compiled engine; None when coordinates are out of its range."""
    import numpy as np

    from . import _fastpeel

    srt = sorted(pts, key=lambda p: p.id)
    scale = _grid_scale(srt)
    xs = [_scaled(p.x, scale) for p in srt]
    ys = [_scaled(p.y, scale) for p in srt]
    lim = _fastpeel.COORD_LIMIT
    if max(map(abs, xs)) >= lim or max(map(abs, ys)) >= lim:
        if engine == "compiled":
            raise ValueError("coordinates exceed the compiled engine's integer range")
        return None
    res = _fastpeel.peel_area(np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64),
                              limit, seed)
    err = res["error"]
    if err == _fastpeel.ERR_DEGENERATE:
        raise DegenerateInputError("input is not in general position")
    if err:
        raise InvariantViolation(f"compiled engine failed with code {err}")
    den = 2 * scale * scale
    # millions of small objects: keep the cyclic collector out of the way
    enabled = gc.isenabled()
    gc.disable()
    try:
        events = [
            PeelEvent(step, srt[i], Fraction(val, den), newly, l1, l2)
            for step, (i, val, newly, l1, l2) in enumerate(zip(
                res["ids"].tolist(), res["sens"].tolist(), res["newly"].tolist(),
                res["l1"].tolist(), res["l2"].tolist()), start=1)
        ]
    finally:
        if enabled:
            gc.enable()
    n = len(pts)
    finished = n - len(events) < 3
    stats = {
        "engine": "compiled",
        "activations": res["activations"],
        "tangent_queries": res["tangent_queries"],
        "extreme_queries": res["extreme_queries"],
        "restore_calls": res["restore_calls"],
        "restore_queries": res["restore_queries"],
        "restore_points": res["restore_points"],
        "max_membership": res["max_membership"],
        "wall_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return PeelTrace(events=events, objective=obj.kind, n=n, k=limit,
                     terminated=finished and len(events) < limit, stats=stats)


def run(points: Sequence[Point], objective="area", k: int | None = None, *,
        check: bool = False, on_step: Callable | None = None,
        seed: int = 0, engine: str = "auto") -> PeelTrace:
    """Peel up to ``k`` points (all peelable points when ``k`` is None).

    ``points`` must already be canonical (general position, distinct ids);
    they may have rational coordinates.  Events carry the original point
    objects and sensitivities in the input's units.  ``on_step(state, event)``
    is called after every peel.

    ``engine="auto"`` hands large uninstrumented area runs to the compiled
    engine, which produces the same trace; ``"python"`` and ``"compiled"``
    force a choice.
    """
    obj = get_objective(objective)
    t0 = time.perf_counter()
    pts = list(points)
    if len(pts) < 3:
        raise TooFewPointsError(f"need at least 3 points, got {len(pts)}")
    if k is not None and k < 0:
        raise ValueError("k must be nonnegative")
    if _compiled_ok(obj, check, on_step, engine, len(pts)):
        limit = len(pts) - 2 if k is None else k
        trace = _run_compiled(pts, obj, limit, seed, t0, engine)
        if trace is not None:
            return trace
    grid, scale = to_grid(pts)
    original = {p.id: p for p in pts}
    state = PeelState(grid, obj, check=check, seed=seed)
    limit = state.n - 2 if k is None else k
    if limit < 0:
        raise ValueError("k must be nonnegative")
    events = []
    while len(events) < limit and not state.finished:
        point, value, newly = state.peel()
        ev = PeelEvent(
            step=state.step,
            peeled=original[point.id],
            sensitivity=obj.report(value, scale),
            newly_active=newly,
            l1_size_after=len(state.L1),
            l2_size_after=len(state.L2),
        )
        events.append(ev)
        if on_step is not None:
            on_step(state, ev)
    wall = time.perf_counter() - t0
    stats = {
        "engine": "python",
        "activations": state.activations,
        "tangent_queries": state.L1.tangent_queries + state.L2.tangent_queries,
        "extreme_queries": state.center.extreme_queries,
        "restore_calls": state.restore_calls,
        "restore_queries": state.restore_queries,
        "restore_points": state.restore_points,
        "queue_sizes": state.queue_sizes,
        "max_membership": state.max_membership if check else None,
        "wall_ms": wall * 1000.0,
    }
    return PeelTrace(events=events, objective=obj.kind, n=state.n, k=limit,
                     terminated=state.finished and len(events) < limit, stats=stats)


def peel_points(points: Sequence[Point], objective="area", k: int | None = None, *,
                seed: int = 0, attempts: int = 5, **kwargs):
    """Canonicalize raw points, then :func:`run`.

    Large inputs skip the exhaustive collinearity check; if the engine then
    meets a degenerate triple the points are perturbed (forced) and the run
    repeated with the next seed.  Returns ``(trace, canonical_points)``.
    """
    pts = canonicalize(points, seed)
    for attempt in range(attempts):
        try:
            return run(pts, objective, k, seed=seed, **kwargs), pts
        except DegenerateInputError:
            if attempt == attempts - 1:
                raise
            pts = canonicalize(pts, seed + attempt + 1, force=True)
    raise AssertionError("unreachable")
