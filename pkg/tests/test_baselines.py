from fractions import Fraction

import pytest

from hullpeel.baselines import distance_peel, layer_peel

from conftest import P, random_points


def naive_distance_peel(points, k):
    pts = list(points)
    out = []
    for _ in range(k):
        mx = Fraction(sum(p.x for p in pts), len(pts))
        my = Fraction(sum(p.y for p in pts), len(pts))
        best = max(pts, key=lambda p: ((p.x - mx) ** 2 + (p.y - my) ** 2, -p.id))
        out.append(best)
        pts.remove(best)
    return out


def test_symmetric_square_lowest_id():
    pts = P((0, 0), (2, 0), (2, 2), (0, 2))
    for metric in ("euclidean", "squared", "manhattan"):
        assert distance_peel(pts, metric, 1).peeled_ids() == [0]


def test_far_point():
    pts = P((0, 0), (1, 0), (0, 1), (1, 1), (50, 40))
    assert distance_peel(pts, k=1).peeled_ids() == [4]


def test_distance_matches_naive(rng):
    for _ in range(20):
        pts = random_points(rng, 40)
        k = rng.randint(1, 30)
        want = [p.id for p in naive_distance_peel(pts, k)]
        assert distance_peel(pts, "euclidean", k).peeled_ids() == want
        assert distance_peel(pts, "squared", k, hull_only=False).peeled_ids() == want


def test_distance_all_points(rng):
    pts = random_points(rng, 10)
    assert sorted(distance_peel(pts, k=10).peeled_ids()) == list(range(10))


def test_distance_bad_args(square_plus):
    with pytest.raises(ValueError):
        distance_peel(square_plus, "cosine")
    with pytest.raises(ValueError):
        distance_peel(square_plus, k=9)


def test_layer_peel_nested_squares():
    pts = P((0, 0), (6, 0), (6, 6), (0, 6), (2, 2), (4, 2), (4, 4), (2, 4))
    assert sorted(layer_peel(pts, 4).peeled_ids()) == [0, 1, 2, 3]
    assert layer_peel(pts, 0).peeled_ids() == []


def test_layer_peel_all(rng):
    pts = random_points(rng, 25)
    ids = layer_peel(pts, 25).peeled_ids()
    assert sorted(ids) == list(range(25))
