"""Deletion-only point set answering extreme-point-beyond-a-line queries.

The points strictly inside the two outer layers live here until the second
layer needs them.  They are held in a static kd-tree whose nodes track the
bounding box of their *live* points; a query is a branch-and-bound search for
the live point farthest beyond a directed line, and a deletion refreshes the
boxes on one root-to-leaf path.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .exceptions import UnknownPointError
from .geometry import Point

__all__ = [
    "CenterHull",
    "build_center",
    "extreme_beyond",
    "delete_point",
    "restore_gap",
]

_LEAF_SIZE = 8


class CenterHull:
    """Live point set with extreme queries and deletions.

    ``extreme_queries`` counts calls to :meth:`extreme_beyond` (including the
    ones issued by :meth:`restore_gap`).
    """

    def __init__(self, points: Sequence[Point] = ()):
        self.points = list(points)
        self.extreme_queries = 0
        self._index = {p.id: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise ValueError("duplicate point ids")
        self._live = [True] * len(self.points)
        self._count = len(self.points)
        self._build()

    # -- construction -----------------------------------------------------
    def _build(self):
        n = len(self.points)
        self._left = []
        self._right = []
        self._lo = []
        self._hi = []
        self._parent = []
        self._minx = []
        self._maxx = []
        self._miny = []
        self._maxy = []
        self._leaf_of = [0] * n
        if n == 0:
            self._perm = []
            return
        fx = np.array([float(p.x) for p in self.points])
        fy = np.array([float(p.y) for p in self.points])
        perm = np.arange(n)
        stack = [(0, n, -1, 0)]
        while stack:
            lo, hi, parent, side = stack.pop()
            node = len(self._left)
            self._left.append(-1)
            self._right.append(-1)
            self._lo.append(lo)
            self._hi.append(hi)
            self._parent.append(parent)
            for arr in (self._minx, self._maxx, self._miny, self._maxy):
                arr.append(None)
            if parent >= 0:
                if side == 0:
                    self._left[parent] = node
                else:
                    self._right[parent] = node
            if hi - lo <= _LEAF_SIZE:
                continue
            idx = perm[lo:hi]
            xs = fx[idx]
            ys = fy[idx]
            coord = xs if xs.max() - xs.min() >= ys.max() - ys.min() else ys
            mid = (hi - lo) // 2
            part = np.argpartition(coord, mid)
            perm[lo:hi] = idx[part]
            stack.append((lo + mid, hi, node, 1))
            stack.append((lo, lo + mid, node, 0))
        self._perm = perm.tolist()
        # leaves first, then internal nodes bottom-up (children have larger ids)
        for node in range(len(self._left) - 1, -1, -1):
            if self._left[node] < 0:
                for k in range(self._lo[node], self._hi[node]):
                    self._leaf_of[self._perm[k]] = node
            self._refresh(node)

    def _refresh(self, node):
        left = self._left[node]
        if left < 0:
            pts = self.points
            live = self._live
            xs = []
            ys = []
            for k in range(self._lo[node], self._hi[node]):
                i = self._perm[k]
                if live[i]:
                    xs.append(pts[i].x)
                    ys.append(pts[i].y)
            if xs:
                box = (min(xs), max(xs), min(ys), max(ys))
            else:
                box = (None, None, None, None)
        else:
            right = self._right[node]
            a = self._minx[left]
            b = self._minx[right]
            if a is None and b is None:
                box = (None, None, None, None)
            elif a is None:
                box = (b, self._maxx[right], self._miny[right], self._maxy[right])
            elif b is None:
                box = (a, self._maxx[left], self._miny[left], self._maxy[left])
            else:
                box = (min(a, b), max(self._maxx[left], self._maxx[right]),
                       min(self._miny[left], self._miny[right]),
                       max(self._maxy[left], self._maxy[right]))
        changed = box[0] != self._minx[node] or box[1] != self._maxx[node] or \
            box[2] != self._miny[node] or box[3] != self._maxy[node]
        self._minx[node], self._maxx[node], self._miny[node], self._maxy[node] = box
        return changed

    # -- queries ----------------------------------------------------------
    def __len__(self):
        return self._count

    def __contains__(self, point):
        pid = point if isinstance(point, int) else point.id
        i = self._index.get(pid)
        return i is not None and self._live[i]

    def live_points(self) -> list:
        return [p for p, alive in zip(self.points, self._live) if alive]

    def _best(self, nx, ny, threshold):
        """Live point maximising (n.p, n_perp.p) with n.p > threshold, or None.

        ``threshold=None`` means unconstrained.
        """
        if self._count == 0:
            return None
        best = None
        best_key = None
        minx, maxx, miny, maxy = self._minx, self._maxx, self._miny, self._maxy
        left, right = self._left, self._right
        pts, live, perm = self.points, self._live, self._perm
        stack = [0]
        while stack:
            node = stack.pop()
            if minx[node] is None:
                continue
            bound = (nx * maxx[node] if nx > 0 else nx * minx[node]) + \
                (ny * maxy[node] if ny > 0 else ny * miny[node])
            if threshold is not None and bound <= threshold:
                continue
            if best_key is not None and bound < best_key[0]:
                continue
            l = left[node]
            if l < 0:
                for k in range(self._lo[node], self._hi[node]):
                    i = perm[k]
                    if not live[i]:
                        continue
                    p = pts[i]
                    d = nx * p.x + ny * p.y
                    if threshold is not None and d <= threshold:
                        continue
                    key = (d, nx * p.y - ny * p.x)
                    if best_key is None or key > best_key:
                        best_key = key
                        best = p
                continue
            r = right[node]
            # descend first into the child with the larger bound
            bl = self._bound(l, nx, ny)
            br = self._bound(r, nx, ny)
            if bl is None:
                stack.append(r)
            elif br is None:
                stack.append(l)
            elif bl >= br:
                stack.append(r)
                stack.append(l)
            else:
                stack.append(l)
                stack.append(r)
        return best

    def _bound(self, node, nx, ny):
        mx = self._minx[node]
        if mx is None:
            return None
        return (nx * self._maxx[node] if nx > 0 else nx * mx) + \
            (ny * self._maxy[node] if ny > 0 else ny * self._miny[node])

    def extreme(self, direction):
        """Live point maximising the dot product with ``direction``."""
        dx, dy = direction
        return self._best(dx, dy, None)

    def extreme_beyond(self, a: Point, b: Point, outward=None):
        """Live point farthest beyond line ab on the ``outward`` side.

        The side defaults to the left of a -> b, which is outside for a
        clockwise chain.  Returns None when no live point is strictly beyond.
        """
        self.extreme_queries += 1
        ex = b.x - a.x
        ey = b.y - a.y
        nx, ny = -ey, ex
        if outward is not None:
            ox, oy = outward
            s = ex * oy - ey * ox
            if s == 0:
                raise ValueError("outward direction is parallel to the line")
            if s < 0:
                nx, ny = ey, -ex
        return self._best(nx, ny, nx * a.x + ny * a.y)

    # -- mutation ---------------------------------------------------------
    def delete(self, point):
        pid = point if isinstance(point, int) else point.id
        i = self._index.get(pid)
        if i is None or not self._live[i]:
            raise UnknownPointError(pid)
        self._live[i] = False
        self._count -= 1
        node = self._leaf_of[i]
        while node >= 0 and self._refresh(node):
            node = self._parent[node]

    def restore_gap(self, a: Point, b: Point, outward=None) -> list:
        """Chain of live points bridging the gap from a to b, removed from the set.

        Quickhull over the live points beyond line ab: each found point z
        splits the gap into (a, z) and (z, b).  The result is ordered from a
        to b, and exactly ``2 * len(result) + 1`` extreme queries are issued.
        """
        flip = False
        if outward is not None:
            ex, ey = b.x - a.x, b.y - a.y
            s = ex * outward[1] - ey * outward[0]
            if s == 0:
                raise ValueError("outward direction is parallel to the line")
            flip = s < 0
        if flip:
            # the chain lies right of a -> b; build it from b to a and reverse
            out = self._bridge(b, a, delete=True)
            out.reverse()
            return out
        return self._bridge(a, b, delete=True)

    def _bridge(self, a, b, delete):
        out = []
        stack = [(a, b)]
        while stack:
            item = stack.pop()
            if isinstance(item, Point):
                out.append(item)
                continue
            s, e = item
            z = self.extreme_beyond(s, e)
            if z is None:
                continue
            if delete:
                self.delete(z)
            stack.append((z, e))
            stack.append(z)
            stack.append((s, z))
        return out

    def outer_chain(self) -> list:
        """Clockwise convex hull of the live points (queries only)."""
        if self._count == 0:
            return []
        lo = self.extreme((-1, 0))
        hi = self.extreme((1, 0))
        if lo is hi:
            return [lo]
        saved = self.extreme_queries
        chain = [lo] + self._bridge(lo, hi, False) + [hi] + self._bridge(hi, lo, False)
        self.extreme_queries = saved
        return chain


def build_center(points: Sequence[Point]) -> CenterHull:
    return CenterHull(points)


def extreme_beyond(ch: CenterHull, a: Point, b: Point, outward=None):
    return ch.extreme_beyond(a, b, outward)


def delete_point(ch: CenterHull, p) -> None:
    ch.delete(p)


def restore_gap(ch: CenterHull, a: Point, b: Point, outward=None) -> list:
    return ch.restore_gap(a, b, outward)
