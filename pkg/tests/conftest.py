"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the package's own line grouping and
solvers: they scan triples with a raw cross product.
"""
import random
from fractions import Fraction
from itertools import combinations

import pytest

from gpss.geometry import Point


def raw_cross(p, q, r):
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def brute_triples(points):
    """All collinear index triples, by an O(n^3) scan."""
    return [t for t in combinations(range(len(points)), 3) if raw_cross(*(points[i] for i in t)) == 0]


def brute_in_general_position(points, subset):
    return all(raw_cross(points[a], points[b], points[c]) != 0 for a, b, c in combinations(subset, 3))


def brute_opt(points):
    """Size of a largest general-position subset, scanning subset sizes downward."""
    n = len(points)
    bad = set(brute_triples(points))
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            if not any(t in bad for t in combinations(subset, 3)):
                return size
    return 0


def brute_lines_through(points, i):
    """Maximal lines (as frozensets) through point i that hold at least three points."""
    lines = set()
    for j in range(len(points)):
        if j == i:
            continue
        on = frozenset(m for m in range(len(points)) if raw_cross(points[i], points[j], points[m]) == 0)
        if len(on) >= 3:
            lines.add(on)
    return lines


def brute_mis(n, edges):
    for size in range(n, -1, -1):
        for subset in combinations(range(1, n + 1), size):
            s = set(subset)
            if not any(u in s and v in s for u, v in edges):
                return size
    return 0


def pts(*coords):
    return [Point(x, y) for x, y in coords]


def random_corpus(count=200, max_n=10, bound=7, seed=20240601):
    """Seeded random instances with integer coordinates in {0..bound}^2."""
    from gpss.generate import gen_random

    rng = random.Random(seed)
    corpus = []
    for i in range(count):
        n = rng.randint(1, max_n)
        corpus.append(gen_random(n, bound, rng.randrange(10**9)))
    return corpus


def random_affine(rng):
    """Random rational affine map with positive determinant."""
    while True:
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        if a * d - b * c > 0:
            break
    e, f = (Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(2))
    return lambda p: Point(a * p.x + b * p.y + e, c * p.x + d * p.y + f)


@pytest.fixture
def grid3():
    return [Point(x, y) for x in range(3) for y in range(3)]


@pytest.fixture
def grid4():
    return [Point(x, y) for x in range(4) for y in range(4)]


@pytest.fixture
def convex5():
    # points on a parabola: no three collinear
    return [Point(x, x * x) for x in range(5)]


# -- acceptance summary ---------------------------------------------------

ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status}  {name}")
