import random
from fractions import Fraction

import pytest

from hullpeel.exceptions import PointInsideHullError, TooFewPointsError
from hullpeel.geometry import Point, cross
from hullpeel.hull import (
    HullChain,
    convex_hull,
    convex_layers,
    extreme_vertex,
    hull_cw,
    layer_lists,
    splice_in,
    splice_out,
    tangent_from_point,
)
from hullpeel.oracles import brute_layer_index

from conftest import P, random_points


def brute_extreme_ids(points):
    """Ids of points not inside the hull of the others (cubic scan)."""
    out = set()
    for p in points:
        others = [q for q in points if q is not p]
        inside = False
        for i, a in enumerate(others):
            for j, b in enumerate(others[i + 1:], i + 1):
                for c in others[j + 1:]:
                    d1, d2, d3 = cross(a, b, p), cross(b, c, p), cross(c, a, p)
                    if (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0):
                        inside = True
                        break
                if inside:
                    break
            if inside:
                break
        if not inside:
            out.add(p.id)
    return out


def scan_tangent(ring, q, side):
    sign = -1 if side == "right" else 1
    for v in ring:
        if all(sign * cross(q, v, w) > 0 for w in ring if w is not v):
            return v
    raise AssertionError("no tangent found")


def scan_extreme(ring, d):
    return max(ring, key=lambda p: (d[0] * p.x + d[1] * p.y, d[0] * p.y - d[1] * p.x))


def is_clockwise_convex(ring):
    m = len(ring)
    return all(cross(ring[i - 2], ring[i - 1], ring[i]) < 0 for i in range(m))


def test_hull_square_with_center():
    ring = hull_cw(P((0, 0), (2, 0), (2, 2), (0, 2), (1, 1)))
    assert len(ring) == 4 and 4 not in {p.id for p in ring}
    assert is_clockwise_convex(ring)


def test_hull_starts_lowest_leftmost():
    ring = hull_cw(P((3, 1), (0, 0), (5, 5), (0, 4)))
    assert (ring[0].x, ring[0].y) == (0, 0)


def test_hull_triangle():
    pts = P((0, 0), (4, 0), (1, 3))
    assert sorted(p.id for p in hull_cw(pts)) == [0, 1, 2]


def test_hull_circle_points_all_extreme():
    # 16 points on a circle of radius 5 via rational parametrisation
    pts = []
    for t in [0, 1, 2, 3, 5, 7, 11, 13]:
        for sgn in (1, -1):
            s = Fraction(t, 8) * sgn
            pts.append(Point(5 * (1 - s * s) / (1 + s * s), 5 * 2 * s / (1 + s * s), len(pts)))
    pts = list({(p.x, p.y): p for p in pts}.values())
    assert brute_extreme_ids(pts) == {p.id for p in pts}
    assert len(hull_cw(pts)) == len(pts)


def test_hull_matches_cubic_oracle(rng):
    for _ in range(40):
        pts = random_points(rng, rng.randint(3, 25), span=50)
        ring = hull_cw(pts)
        assert {p.id for p in ring} == brute_extreme_ids(pts)
        assert is_clockwise_convex(ring)


def test_convex_hull_too_few():
    with pytest.raises(TooFewPointsError):
        convex_hull(P((0, 0), (1, 1)))


def test_layers_nested_squares():
    pts = P((0, 0), (6, 0), (6, 6), (0, 6), (2, 2), (4, 2), (4, 4), (2, 4))
    ls = convex_layers(pts)
    assert len(ls) == 2
    assert [len(c) for c in ls.layers] == [4, 4]
    assert ls.layer_of[5] == 2 and ls.layer_of[1] == 1
    assert brute_layer_index(pts, 4) == 2
    assert brute_layer_index(pts, pts[0]) == 1


def test_layers_convex_position():
    pts = P((0, 0), (4, 0), (5, 3), (2, 5), (-1, 3))
    assert len(convex_layers(pts)) == 1


def test_layers_match_repeated_hull(rng):
    pts = random_points(rng, 30)
    ls = convex_layers(pts)
    for p in pts:
        assert ls.layer_of[p.id] == brute_layer_index(pts, p.id)


def test_layers_random_50_consistent(rng):
    pts = random_points(rng, 50, span=200)
    ls = convex_layers(pts)
    for p in pts[:20]:
        assert ls.layer_of[p.id] == brute_layer_index(pts, p)


def test_layer_lists_partition(rng):
    pts = random_points(rng, 60)
    ids = [p.id for ring in layer_lists(pts) for p in ring]
    assert sorted(ids) == sorted(p.id for p in pts)


# -- queries ---------------------------------------------------------------

def test_tangent_square_symmetry():
    chain = HullChain(hull_cw(P((1, 1), (2, 1), (2, 2), (1, 2))))
    q = Point(0, 0)
    assert tangent_from_point(chain, q, "right").point == Point(1, 2, 3)
    assert tangent_from_point(chain, q, "left").point == Point(2, 1, 1)


def test_tangent_far_point():
    rng = random.Random(4)
    pts = random_points(rng, 40)
    ring = hull_cw(pts)
    chain = HullChain(ring, seed=1)
    q = Point(10**6, 7)
    assert chain.tangent(q, "right").point == scan_tangent(ring, q, "right")
    assert chain.tangent(q, "left").point == scan_tangent(ring, q, "left")


def test_tangent_inside_raises():
    chain = HullChain(hull_cw(P((0, 0), (4, 0), (4, 4), (0, 4))))
    with pytest.raises(PointInsideHullError):
        chain.tangent(Point(1, 2), "right")


def test_tangent_bad_side():
    chain = HullChain(hull_cw(P((0, 0), (4, 0), (4, 4), (0, 4))))
    with pytest.raises(ValueError):
        chain.tangent(Point(9, 9), "up")


def test_extreme_square():
    chain = HullChain(hull_cw(P((0, 0), (4, 1), (4, 4), (0, 4))))
    assert extreme_vertex(chain, (1, 1)).point.id == 2
    sq = HullChain(hull_cw(P((0, 2), (2, 0), (4, 2), (2, 4))))
    assert sq.extreme((1, 0)).point.id == 2


def test_extreme_random_50gon(rng):
    pts = [Point(rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4), i) for i in range(400)]
    ring = hull_cw(pts)
    chain = HullChain(ring, seed=2)
    for _ in range(200):
        d = (rng.randint(-50, 50), rng.randint(-50, 50))
        if d == (0, 0):
            continue
        assert chain.extreme(d).point == scan_extreme(ring, d)


def test_extreme_zero_direction():
    chain = HullChain(hull_cw(P((0, 0), (4, 0), (0, 4))))
    with pytest.raises(ValueError):
        chain.extreme((0, 0))


def test_tangent_with_hints(rng):
    pts = random_points(rng, 300, span=10**5)
    ring = hull_cw(pts)
    chain = HullChain(ring, seed=3)
    hint = chain.first()
    for _ in range(100):
        q = Point(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        if all(cross(ring[i - 1], ring[i], q) < 0 for i in range(len(ring))):
            continue
        got = chain.tangent(q, "right", hint)
        assert got.point == scan_tangent(ring, q, "right")
        hint = got


# -- mutation ----------------------------------------------------------------

def test_splice_out_one_vertex():
    chain = HullChain(hull_cw(P((0, 0), (4, 0), (4, 4), (0, 4))))
    n = chain.node(2)
    assert splice_out(chain, n, n) == [Point(4, 4, 2)]
    assert len(chain) == 3


def test_splice_out_hexagon_arc():
    pts = P((0, 0), (2, -1), (4, 0), (4, 2), (2, 3), (0, 2))
    chain = HullChain(hull_cw(pts))
    a = chain.node(4)
    b = chain.succ(a)
    removed = chain.splice_out(a, b)
    assert len(removed) == 2 and len(chain) == 4
    assert len(chain.cycle_from(chain.first())) == 4


def test_splice_in_bulge():
    chain = HullChain(hull_cw(P((0, 0), (0, 4), (4, 0))))
    after = chain.node(1)
    splice_in(chain, after, [Point(3, 3, 9)])
    assert is_clockwise_convex(chain.vertices())
    assert len(chain) == 4


def test_splice_in_empty_is_noop():
    chain = HullChain(hull_cw(P((0, 0), (0, 4), (4, 0))))
    before = chain.ids()
    chain.splice_in(chain.first(), [])
    assert chain.ids() == before


def test_splice_roundtrip(rng):
    pts = random_points(rng, 200)
    ring = hull_cw(pts)
    chain = HullChain(ring, seed=7)
    for _ in range(30):
        m = len(chain)
        i = rng.randrange(m)
        j = rng.randrange(1, m - 1)
        start = chain.node(ring[i])
        end = start
        for _ in range(j - 1):
            end = chain.succ(end)
        before = chain.pred(start)
        arc = chain.splice_out(start, end)
        chain.splice_in(before, arc)
        assert chain.cycle_from(chain.node(ring[0])) == ring


def test_random_removals_match_recompute(rng):
    pts = random_points(rng, 150)
    chain = HullChain(hull_cw(pts), seed=9)
    while len(chain) > 3:
        start = chain.node(rng.choice(chain.vertices()))
        end = start
        for _ in range(rng.randrange(min(3, len(chain) - 3))):
            end = chain.succ(end)
        chain.splice_out(start, end)
        survivors = chain.vertices()
        ring = hull_cw(survivors)
        assert chain.cycle_from(chain.node(ring[0])) == ring
