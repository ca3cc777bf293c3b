import random

import pytest

from hullpeel.geometry import Point, canonicalize


def random_points(rng, n, span=1000):
    """n distinct integer points in general position (perturbed when needed)."""
    seen = set()
    pts = []
    while len(pts) < n:
        xy = (rng.randint(-span, span), rng.randint(-span, span))
        if xy in seen:
            continue
        seen.add(xy)
        pts.append(Point(xy[0], xy[1], len(pts)))
    return canonicalize(pts, seed=rng.randint(0, 10**6))


def P(*coords):
    """Points with ids in argument order: P((0, 0), (1, 0)) ..."""
    return [Point(x, y, i) for i, (x, y) in enumerate(coords)]


SQUARE_PLUS = ((0, 0), (4, 0), (4, 4), (0, 4), (2, 1))


@pytest.fixture
def square_plus():
    return P(*SQUARE_PLUS)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
