"""scikit-learn style outlier detectors built on hull peeling.

Each detector peels ``n_outliers`` points from the training data; the
peeled points are the outliers.  Coordinates are converted to exact
rationals (floats bit for bit), so results do not depend on rounding.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, OutlierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .baselines import METRICS, distance_peel, layer_peel
from .geometry import Point, as_exact, canonicalize
from .hull import hull_cw
from .objectives import get_objective
from .peeler import peel_points

__all__ = [
    "AreaWeightedPeeling",
    "DistancePeeling",
    "LayerPeeling",
    "to_points",
]


def to_points(X) -> list:
    """Validated (n, 2) array-like to exact :class:`Point` objects (ids = rows)."""
    X = check_array(X, dtype=None, ensure_min_samples=1)
    if X.shape[1] != 2:
        raise ValueError(f"expected 2 features, got {X.shape[1]}")
    if X.dtype.kind not in "iuf" and X.dtype != object:
        raise ValueError(f"unsupported dtype {X.dtype}")
    out = []
    for i, (x, y) in enumerate(X.tolist()):
        out.append(Point(as_exact(x), as_exact(y), i))
    return out


def _resolve_k(n_outliers, contamination, n, limit):
    if n_outliers is not None and contamination is not None:
        raise ValueError("give n_outliers or contamination, not both")
    if contamination is not None:
        if not 0 <= contamination <= 0.5:
            raise ValueError("contamination must be in [0, 0.5]")
        k = int(round(contamination * n))
    elif n_outliers is not None:
        k = int(n_outliers)
    else:
        k = 1
    if k < 0 or k > limit:
        raise ValueError(f"cannot remove {k} outliers from {n} points (max {limit})")
    return k


class _PeelingDetector(OutlierMixin, BaseEstimator):
    """Shared fit/predict plumbing; subclasses implement ``_peel``."""

    def fit(self, X, y=None):
        points = to_points(X)
        self.n_features_in_ = 2
        self.n_samples_ = len(points)
        order = self._peel(points)
        self.peel_order_ = np.asarray(order, dtype=np.int64)
        rank = np.full(len(points), -1, dtype=np.int64)
        rank[self.peel_order_] = np.arange(1, len(order) + 1)
        # duplicates of a peeled point share its fate
        first = {}
        for p in points:
            first.setdefault((p.x, p.y), p.id)
        for p in points:
            r = rank[first[(p.x, p.y)]]
            if rank[p.id] < 0 and r > 0:
                rank[p.id] = r
        self.peel_rank_ = rank
        self.labels_ = np.where(rank > 0, -1, 1)
        gone = set(np.nonzero(rank > 0)[0].tolist())
        survivors = [p for p in points if p.id not in gone]
        self.hull_ = [(p.x, p.y) for p in hull_cw(survivors)]
        return self

    def fit_predict(self, X, y=None):
        """-1 for peeled points (and their duplicates), 1 otherwise."""
        return self.fit(X).labels_

    def predict(self, X):
        """1 when a point lies in the closed hull of the surviving points, else -1."""
        check_is_fitted(self, "hull_")
        pts = to_points(X)
        ring = self.hull_
        out = np.empty(len(pts), dtype=np.int64)
        for i, p in enumerate(pts):
            out[i] = 1 if _in_closed_hull(ring, p.x, p.y) else -1
        return out


def _in_closed_hull(ring, x, y):
    m = len(ring)
    if m == 0:
        return False
    if m == 1:
        return ring[0] == (x, y)
    if m == 2:
        (ax, ay), (bx, by) = ring
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) != 0:
            return False
        return min(ax, bx) <= x <= max(ax, bx) and min(ay, by) <= y <= max(ay, by)
    for i in range(m):
        ax, ay = ring[i - 1]
        bx, by = ring[i]
        # clockwise ring: the interior is on the right of every edge
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) > 0:
            return False
    return True


class AreaWeightedPeeling(_PeelingDetector):
    """Greedy hull peeling by largest objective decrease.

    Parameters
    ----------
    n_outliers : int, optional
        Number of points to peel (default 1 unless ``contamination`` is set).
    contamination : float, optional
        Fraction of points to peel instead of a count.
    objective : {"area", "perimeter", "count"}
    seed : int
        Seed for the symbolic perturbation of degenerate input.
    engine : {"auto", "python", "compiled"}

    Attributes
    ----------
    peel_order_ : ndarray of row indices in peel order
    sensitivities_ : ndarray of float, the objective decrease of each peel
    trace_ : the full :class:`~hullpeel.peeler.PeelTrace`
    labels_ : ndarray, -1 for outliers and 1 for inliers
    """

    def __init__(self, n_outliers=None, contamination=None, objective="area",
                 seed=0, engine="auto"):
        self.n_outliers = n_outliers
        self.contamination = contamination
        self.objective = objective
        self.seed = seed
        self.engine = engine

    def _peel(self, points):
        get_objective(self.objective)
        n = len({(p.x, p.y) for p in points})
        k = _resolve_k(self.n_outliers, self.contamination, len(points), max(n - 2, 0))
        trace, _ = peel_points(points, self.objective, k, seed=self.seed,
                               engine=self.engine)
        self.trace_ = trace
        self.sensitivities_ = np.array([float(e.sensitivity) for e in trace.events])
        return trace.peeled_ids()


class DistancePeeling(_PeelingDetector):
    """Peel the hull vertex farthest from the mean of the remaining points."""

    def __init__(self, n_outliers=None, contamination=None, metric="euclidean",
                 hull_only=True):
        self.n_outliers = n_outliers
        self.contamination = contamination
        self.metric = metric
        self.hull_only = hull_only

    def _peel(self, points):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        pts = canonicalize(points) if len(points) >= 3 else points
        k = _resolve_k(self.n_outliers, self.contamination, len(points), len(pts))
        return distance_peel(pts, self.metric, k, hull_only=self.hull_only).peeled_ids()


class LayerPeeling(_PeelingDetector):
    """Peel whole convex layers from the outside in."""

    def __init__(self, n_outliers=None, contamination=None):
        self.n_outliers = n_outliers
        self.contamination = contamination

    def _peel(self, points):
        pts = canonicalize(points) if len(points) >= 3 else points
        k = _resolve_k(self.n_outliers, self.contamination, len(points), len(pts))
        return layer_peel(pts, k).peeled_ids()

