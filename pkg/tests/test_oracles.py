from fractions import Fraction
from itertools import combinations

import pytest

from hullpeel.exceptions import InstanceTooLargeError
from hullpeel.geometry import Point, canonicalize
from hullpeel.oracles import (
    EXACT_LIMIT,
    better,
    brute_layer_index,
    exact_k_peel,
    hull_area,
    naive_weighted_peel,
)
from hullpeel.peeler import run

from conftest import P, random_points

CLUSTER = ((0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2)))
# pair shifted off the cluster diagonal so no removal leaves a collinear set
FIG2 = CLUSTER + ((10, 12), (Fraction(101, 10), Fraction(121, 10)))


def test_square_plus_trace(square_plus):
    tr = naive_weighted_peel(square_plus, "area")
    assert tr.peeled_ids()[0] == 2
    assert tr.events[0].sensitivity == 8
    assert [e.step for e in tr.events] == [1, 2, 3]


def test_convex_position_peels_largest_triangle():
    pts = P((0, 0), (10, 0), (12, 5), (6, 9), (-1, 4))
    tr = naive_weighted_peel(pts, "area", 1)
    ring = [pts[i] for i in (0, 4, 3, 2, 1)]
    tri = {}
    for i, u in enumerate(ring):
        t, v = ring[i - 1], ring[(i + 1) % 5]
        tri[u.id] = abs(Fraction((u.x - t.x) * (v.y - t.y) - (u.y - t.y) * (v.x - t.x), 2))
    best = max(tri.values())
    assert tr.events[0].sensitivity == best
    assert tr.events[0].peeled.id == min(i for i, a in tri.items() if a == best)


def test_triangle_single_event():
    pts = P((0, 0), (5, 0), (0, 3))
    tr = naive_weighted_peel(pts)
    assert len(tr.events) == 1
    assert tr.events[0].sensitivity == Fraction(15, 2)


def test_k_zero_exact():
    pts = P((0, 0), (4, 0), (4, 4), (0, 4), (2, 1))
    removed, area = exact_k_peel(pts, 0)
    assert removed == [] and area == 16


def test_fig2_diagonal_pair_is_degenerate():
    # with the pair on the diagonal, dropping two corners leaves a segment
    pts = P(*CLUSTER, (10, 10), (Fraction(101, 10), Fraction(101, 10)))
    removed, area = exact_k_peel(pts, 2)
    assert area == 0
    assert [p.id for p in removed] == [1, 3]


def test_fig2_exact_removes_pair():
    pts = P(*FIG2)
    removed, area = exact_k_peel(pts, 2)
    assert {p.id for p in removed} == {5, 6}
    assert area == 1


def test_fig2_weighted_not_better_than_exact():
    pts = P(*FIG2)
    canon = canonicalize(pts)
    tr = run(canon, "area", 2)
    gone = set(tr.peeled_ids())
    weighted_area = hull_area([p for p in pts if p.id not in gone])
    assert exact_k_peel(pts, 2)[1] <= weighted_area


def test_exact_matches_enumeration(rng):
    pts = random_points(rng, 9, span=30)
    for k in range(4):
        best = min(hull_area([p for p in pts if p not in set(c)]) if 9 - k >= 3 else 0
                   for c in combinations(pts, k))
        assert exact_k_peel(pts, k)[1] == best


def test_exact_limit():
    pts = P(*[(i, i * i) for i in range(60)])
    with pytest.raises(InstanceTooLargeError) as info:
        exact_k_peel(pts, 10)
    assert info.value.combinations > EXACT_LIMIT


def test_exact_bad_k(square_plus):
    with pytest.raises(ValueError):
        exact_k_peel(square_plus, 6)


def test_brute_layer_index():
    pts = P((0, 0), (6, 0), (6, 6), (0, 6), (2, 2), (4, 2), (4, 4), (2, 4))
    assert brute_layer_index(pts, 0) == 1
    assert brute_layer_index(pts, 6) == 2
    with pytest.raises(KeyError):
        brute_layer_index(pts, 42)


def test_hull_area_degenerate():
    assert hull_area(P((0, 0), (1, 1))) == 0
    assert hull_area(P((0, 0), (2, 0), (0, 2), (1, 1))) == 2


def test_better_tie_rule():
    assert better("area", 5, 3, 4, 1)
    assert better("area", 5, 1, 5, 3)
    assert not better("area", 5, 3, 5, 1)
