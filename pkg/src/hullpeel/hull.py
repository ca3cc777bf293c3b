"""Static hulls, onion layers and the mutable clockwise hull chain.

:class:`HullChain` stores the vertices of a convex polygon in clockwise cyclic
order.  It is a skip list: level 0 is a doubly linked list (constant-time
neighbours), and the express levels give logarithmic binary search, which is
what tangent and extreme-point queries are.  Splicing an arc in or out costs
expected O(1) per vertex plus the search for the insertion point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .exceptions import (
    DegenerateInputError,
    PointInsideHullError,
    TooFewPointsError,
)
from .geometry import Point

__all__ = [
    "HullChain",
    "LayerSet",
    "convex_hull",
    "hull_cw",
    "convex_layers",
    "tangent_from_point",
    "extreme_vertex",
    "splice_out",
    "splice_in",
]

_MAX_LEVEL = 40
# walk this many steps from a hint before falling back to binary search
WALK_LIMIT = 12


class _Node:
    __slots__ = ("point", "nxt", "prv", "chain")

    def __init__(self, point, height, chain=None):
        self.point = point
        self.nxt = [None] * height
        self.prv = [None] * height
        self.chain = chain

    def __repr__(self):
        return f"<vertex {self.point!r}>"


class HullChain:
    """Clockwise cycle of convex-position vertices with O(log n) search.

    Vertex handles are the nodes returned by :meth:`node`, :meth:`first`,
    :meth:`succ`, :meth:`pred` and the query methods; a handle stays valid
    until its vertex is spliced out.
    """

    def __init__(self, vertices: Iterable[Point] = (), seed: int = 0):
        self._rng = random.Random(seed)
        self._head = _Node(None, _MAX_LEVEL)
        self._tail = None
        self._size = 0
        self._levels = 1
        self._by_id = {}
        self.tangent_queries = 0
        self.extreme_queries = 0
        self._extend(vertices)

    # -- construction -----------------------------------------------------
    def _height(self):
        r = self._rng.getrandbits(32)
        h = 1
        while r & 1 and h < _MAX_LEVEL:
            h += 1
            r >>= 1
        return h

    def _extend(self, vertices):
        # append in order; last[l] is the current last node on level l
        last = [self._head] * _MAX_LEVEL
        if self._tail is not None:
            raise ValueError("bulk extend only on an empty chain")
        for p in vertices:
            h = self._height()
            node = _Node(p, h, self)
            for lvl in range(h):
                prev = last[lvl]
                prev.nxt[lvl] = node
                node.prv[lvl] = prev
                last[lvl] = node
            if h > self._levels:
                self._levels = h
            self._register(node)
            self._tail = node
            self._size += 1

    def _register(self, node):
        pid = node.point.id
        if pid in self._by_id:
            raise ValueError(f"point id {pid} already in chain")
        self._by_id[pid] = node

    def _insert_after(self, x, point):
        h = self._height()
        node = _Node(point, h, self)
        nx = x.nxt[0]
        node.nxt[0] = nx
        node.prv[0] = x
        x.nxt[0] = node
        if nx is None:
            self._tail = node
        else:
            nx.prv[0] = node
        p = x
        for lvl in range(1, h):
            while len(p.nxt) <= lvl:
                p = p.prv[len(p.nxt) - 1]
            nx = p.nxt[lvl]
            node.nxt[lvl] = nx
            node.prv[lvl] = p
            p.nxt[lvl] = node
            if nx is not None:
                nx.prv[lvl] = node
        if h > self._levels:
            self._levels = h
        self._register(node)
        self._size += 1
        return node

    def _unlink(self, node):
        if node is self._tail:
            p = node.prv[0]
            self._tail = None if p is self._head else p
        for lvl in range(len(node.nxt)):
            p = node.prv[lvl]
            nx = node.nxt[lvl]
            p.nxt[lvl] = nx
            if nx is not None:
                nx.prv[lvl] = p
        del self._by_id[node.point.id]
        node.chain = None
        self._size -= 1

    # -- navigation -------------------------------------------------------
    def __len__(self):
        return self._size

    def __bool__(self):
        return self._size > 0

    def __iter__(self) -> Iterator[Point]:
        node = self._head.nxt[0]
        while node is not None:
            yield node.point
            node = node.nxt[0]

    def __contains__(self, point):
        pid = point if isinstance(point, int) else point.id
        return pid in self._by_id

    def vertices(self) -> list:
        return list(self)

    def ids(self) -> list:
        return [p.id for p in self]

    def first(self):
        return self._head.nxt[0]

    def node(self, point):
        """Handle of the vertex with the given point (or point id)."""
        pid = point if isinstance(point, int) else point.id
        return self._by_id[pid]

    def get(self, pid):
        return self._by_id.get(pid)

    def succ(self, node):
        """Clockwise successor of ``node``."""
        s = node.nxt[0]
        return s if s is not None else self._head.nxt[0]

    def pred(self, node):
        """Counterclockwise neighbour of ``node``."""
        p = node.prv[0]
        return p if p is not self._head else self._tail

    def cycle_from(self, node) -> list:
        """Vertices in clockwise order starting at ``node``."""
        out = [node.point]
        s = self.succ(node)
        while s is not node:
            out.append(s.point)
            s = self.succ(s)
        return out

    def arc(self, start, end) -> list:
        """Points of the clockwise arc start..end (inclusive)."""
        out = [start.point]
        x = start
        limit = self._size
        while x is not end:
            x = self.succ(x)
            out.append(x.point)
            limit -= 1
            if limit < 0:
                raise ValueError("end vertex is not on this chain")
        return out

    def depth(self) -> int:
        """Height of the express structure (number of levels in use)."""
        h = 0
        node = self._head.nxt[0]
        while node is not None:
            if len(node.nxt) > h:
                h = len(node.nxt)
            node = node.nxt[0]
        return h

    # -- search -----------------------------------------------------------
    def _last_true(self, pred):
        """Last vertex (in stored order) of the true-prefix of ``pred``."""
        x = self._head
        for lvl in range(self._levels - 1, -1, -1):
            y = x.nxt[lvl]
            while y is not None and pred(y):
                x = y
                y = x.nxt[lvl]
        return None if x is self._head else x

    def _argmax(self, gt: Callable[[Point, Point], bool]):
        """Maximum of a cyclically unimodal order ``gt`` over the vertices."""
        first = self._head.nxt[0]
        if self._size <= 2:
            if self._size == 0:
                raise ValueError("empty chain")
            second = first.nxt[0]
            if second is not None and gt(second.point, first.point):
                return second
            return first
        p0 = first.point
        second = first.nxt[0]
        head_nxt = first

        if gt(second.point, p0):
            def rising(x):
                if x is first:
                    return True
                s = x.nxt[0] or head_nxt
                return gt(s.point, x.point) and not gt(p0, x.point)

            return self._last_true(rising).nxt[0]

        def before_last_fall(x):
            if x is first:
                return True
            s = x.nxt[0] or head_nxt
            return gt(s.point, x.point) or not gt(x.point, p0)

        x = self._last_true(before_last_fall)
        return x.nxt[0] or first

    def _walk(self, gt, node, limit):
        s = self.succ(node)
        if gt(s.point, node.point):
            for _ in range(limit):
                node = s
                s = self.succ(node)
                if not gt(s.point, node.point):
                    return node
            return None
        p = self.pred(node)
        if gt(p.point, node.point):
            for _ in range(limit):
                node = p
                p = self.pred(node)
                if not gt(p.point, node.point):
                    return node
            return None
        return node

    def _search(self, gt, hint):
        if hint is not None and self._size > 2:
            found = self._walk(gt, hint, WALK_LIMIT)
            if found is not None:
                return found
        return self._argmax(gt)

    def tangent(self, q: Point, side: str, hint=None):
        """Tangent vertex v from external point q.

        ``side="right"``: every vertex lies right of (or on) line q -> v.
        ``side="left"``: every vertex lies left of it.  Raises
        :class:`PointInsideHullError` when q is not strictly outside.
        """
        self.tangent_queries += 1
        qx, qy = q.x, q.y
        if side == "right":
            def gt(a, b):
                d = (b.x - qx) * (a.y - qy) - (b.y - qy) * (a.x - qx)
                if d == 0:
                    raise DegenerateInputError(f"{q!r}, {a!r}, {b!r} are collinear")
                return d > 0
        elif side == "left":
            def gt(a, b):
                d = (b.x - qx) * (a.y - qy) - (b.y - qy) * (a.x - qx)
                if d == 0:
                    raise DegenerateInputError(f"{q!r}, {a!r}, {b!r} are collinear")
                return d < 0
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if self._size == 0:
            raise ValueError("empty chain")
        if self._size == 1:
            v = self._head.nxt[0]
            if v.point.x == qx and v.point.y == qy:
                raise PointInsideHullError("query point coincides with the vertex")
            return v
        v = self._search(gt, hint)
        if gt(self.succ(v).point, v.point) or gt(self.pred(v).point, v.point):
            raise PointInsideHullError(f"{q!r} is not strictly outside the chain")
        return v

    def extreme(self, direction, hint=None):
        """Vertex maximising the dot product with ``direction``.

        Ties (an edge orthogonal to ``direction``) go to the vertex that is
        larger along ``direction`` rotated a quarter turn counterclockwise.
        """
        self.extreme_queries += 1
        dx, dy = direction
        if dx == 0 and dy == 0:
            raise ValueError("direction must be nonzero")

        def gt(a, b):
            d = dx * (a.x - b.x) + dy * (a.y - b.y)
            if d:
                return d > 0
            return dx * (a.y - b.y) - dy * (a.x - b.x) > 0

        return self._search(gt, hint)

    # -- mutation ---------------------------------------------------------
    def splice_out(self, start, end) -> list:
        """Remove the clockwise arc start..end (inclusive); return its points."""
        if start.chain is not self or end.chain is not self:
            raise ValueError("handle does not belong to this chain")
        nodes = [start]
        x = start
        while x is not end:
            x = self.succ(x)
            if x is start:
                raise ValueError("end vertex is not on this chain")
            nodes.append(x)
        for node in nodes:
            self._unlink(node)
        return [node.point for node in nodes]

    def remove(self, node):
        if node.chain is not self:
            raise ValueError("handle does not belong to this chain")
        self._unlink(node)
        return node.point

    def splice_in(self, after, points: Sequence[Point]) -> list:
        """Insert ``points`` in order between ``after`` and its successor.

        ``after=None`` inserts at the front of the stored order (the only
        option for an empty chain).
        """
        if after is None:
            x = self._head
        elif after.chain is not self:
            raise ValueError("handle does not belong to this chain")
        else:
            x = after
        out = []
        for p in points:
            x = self._insert_after(x, p)
            out.append(x)
        return out

    def __repr__(self):
        return f"HullChain({self.vertices()!r})"


# -- module level API mirroring the chain methods -------------------------

def tangent_from_point(chain: HullChain, q: Point, side: str, hint=None):
    return chain.tangent(q, side, hint)


def extreme_vertex(chain: HullChain, direction, hint=None):
    return chain.extreme(direction, hint)


def splice_out(chain: HullChain, start, end) -> list:
    return chain.splice_out(start, end)


def splice_in(chain: HullChain, after, arc: Sequence[Point]) -> None:
    chain.splice_in(after, arc)


# -- static hulls -------------------------------------------------------------

def _chain_half(points):
    out = []
    for p in points:
        while len(out) >= 2:
            a = out[-2]
            b = out[-1]
            if (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0:
                out.pop()
            else:
                break
        out.append(p)
    return out


def hull_cw(points: Sequence[Point], presorted: bool = False) -> list:
    """Extreme points in clockwise order, starting from the lowest-leftmost.

    Collinear boundary points are dropped.  Fewer than three input points are
    returned as given (sorted).
    """
    pts = list(points) if presorted else sorted(points, key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        return pts
    upper = _chain_half(pts)
    lower = _chain_half(reversed(pts))
    return upper[:-1] + lower[:-1]


def convex_hull(points: Sequence[Point], seed: int = 0) -> HullChain:
    """Clockwise :class:`HullChain` of the extreme points of ``points``."""
    if len(points) < 3:
        raise TooFewPointsError(f"convex hull needs 3 points, got {len(points)}")
    return HullChain(hull_cw(points), seed=seed)


@dataclass
class LayerSet:
    """Onion decomposition; ``layers[0]`` is the outer hull.

    ``layer_of`` maps point id to its 1-based layer number.
    """
    layers: list = field(default_factory=list)
    layer_of: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.layers)

    def layer(self, k: int) -> HullChain:
        return self.layers[k - 1]


def layer_lists(points: Sequence[Point]) -> list:
    """Convex layers as clockwise point lists, by repeated hull extraction."""
    remaining = sorted(points, key=lambda p: (p.x, p.y))
    layers = []
    while remaining:
        ring = hull_cw(remaining, presorted=True)
        layers.append(ring)
        taken = {p.id for p in ring}
        remaining = [p for p in remaining if p.id not in taken]
    return layers


def convex_layers(points: Sequence[Point], seed: int = 0) -> LayerSet:
    if not points:
        raise TooFewPointsError("convex layers need at least one point")
    out = LayerSet()
    for k, ring in enumerate(layer_lists(points), start=1):
        out.layers.append(HullChain(ring, seed=seed + k))
        for p in ring:
            out.layer_of[p.id] = k
    return out
