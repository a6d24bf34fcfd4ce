from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from gpss.geometry import (
    CanonicalLine,
    DegenerateLineError,
    DuplicatePointError,
    Point,
    canonical_line,
    collinear,
    convex_hull_vertices,
    inner_point_count,
    order_type,
    orientation,
    same_order_type,
)

from conftest import pts, random_affine, raw_cross

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
points = st.builds(Point, fractions, fractions)


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((0, 0), (1, 0), (0, 1), 1),
        ((0, 0), (1, 1), (2, 2), 0),
        ((0, 0), (0, 1), (1, 0), -1),
    ],
)
def test_orientation_examples(a, b, c, expected):
    assert orientation(*pts(a, b, c)) == expected


def test_orientation_coincident_points_is_zero():
    p = Point(3, 4)
    assert orientation(p, p, Point(1, 2)) == 0


def test_collinear_examples():
    assert collinear(*pts((0, 0), (2, 1), (4, 2)))
    assert not collinear(*pts((0, 0), (1, 0), (0, 1)))
    circle = pts((1, 0), ("4/5", "-3/5"), ("3/5", "-4/5"))
    assert raw_cross(*circle) != 0
    assert not collinear(*circle)


def test_point_rejects_floats():
    with pytest.raises(TypeError):
        Point(0.5, 1)


def test_point_ordering_is_lexicographic():
    assert sorted(pts((1, 0), (0, 5), (0, -1))) == pts((0, -1), (0, 5), (1, 0))


def test_canonical_line_examples():
    assert canonical_line(*pts((0, 0), (1, 1))) == CanonicalLine(1, -1, 0)
    assert canonical_line(*pts((0, 0), (0, 5))) == CanonicalLine(1, 0, 0)
    # x = 1/2, denominators cleared -> 2x = 1
    assert canonical_line(*pts(("1/2", 0), ("1/2", 3))) == CanonicalLine(2, 0, 1)


def test_canonical_line_horizontal_sign():
    line = canonical_line(*pts((5, 2), (-1, 2)))
    assert line == CanonicalLine(0, 1, 2)


def test_canonical_line_rejects_identical_points():
    with pytest.raises(DegenerateLineError, match="degenerate line"):
        canonical_line(Point(1, 1), Point(1, 1))


@given(points, points)
def test_canonical_line_normal_form(p, q):
    if p == q:
        return
    line = canonical_line(p, q)
    from math import gcd

    assert gcd(gcd(abs(line.a), abs(line.b)), abs(line.c)) == 1
    assert line.a > 0 or (line.a == 0 and line.b > 0)
    assert line == canonical_line(q, p)
    assert line.contains(p) and line.contains(q)


@given(points, points, points)
def test_collinear_iff_same_canonical_line(p, q, r):
    if len({p, q, r}) < 3:
        return
    assert collinear(p, q, r) == (canonical_line(p, q) == canonical_line(p, r))


@given(points, points, points)
def test_orientation_antisymmetric(p, q, r):
    o = orientation(p, q, r)
    assert orientation(q, p, r) == -o
    assert orientation(p, r, q) == -o
    assert orientation(r, q, p) == -o
    assert collinear(p, q, r) == collinear(r, p, q) == collinear(q, r, p)


@given(points, points, points, st.integers(0, 10**6))
def test_orientation_affine_invariant(p, q, r, seed):
    f = random_affine(random.Random(seed))
    assert orientation(f(p), f(q), f(r)) == orientation(p, q, r)


@given(fractions, fractions)
def test_rational_arithmetic_exact(a, b):
    assert (a + b) - b == a
    assert (a * 3) / 3 == a


def test_rational_kept_reduced():
    p = Point(Fraction(6, -8), "10/4")
    assert (p.x.numerator, p.x.denominator) == (-3, 4)
    assert (p.y.numerator, p.y.denominator) == (5, 2)


def test_order_type_examples():
    assert order_type(pts((0, 0), (1, 0), (0, 1))).sigma == {(0, 1, 2): 1}
    assert order_type(pts((0, 0), (1, 0), (2, 0))).sigma == {(0, 1, 2): 0}


def test_order_type_square_matches_determinants():
    square = pts((0, 0), (1, 0), (0, 1), (1, 1))
    # computed by the raw determinant; (1,0) -> (0,1) -> (1,1) turns clockwise
    assert order_type(square).sigma == {(0, 1, 2): 1, (0, 1, 3): 1, (0, 2, 3): -1, (1, 2, 3): -1}
    expected = {}
    for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        d = raw_cross(*(square[i] for i in t))
        expected[t] = (d > 0) - (d < 0)
    assert order_type(square).sigma == expected


def test_order_type_size_and_zero_pattern(grid3):
    ot = order_type(grid3)
    assert len(ot.sigma) == 84
    assert sum(1 for s in ot.sigma.values() if s == 0) == 8


def test_order_type_rejects_duplicates():
    with pytest.raises(DuplicatePointError):
        order_type(pts((0, 0), (1, 1), (0, 0)))


def test_same_order_type_examples():
    tri = pts((0, 0), (1, 0), (0, 1))
    assert same_order_type(order_type(tri), order_type(tri))
    stretched = [Point(2 * p.x + 1, p.y) for p in tri]
    assert same_order_type(order_type(tri), order_type(stretched))
    mirrored = [Point(-p.x, p.y) for p in tri]
    assert not same_order_type(order_type(tri), order_type(mirrored))


def test_same_order_type_different_sizes():
    assert not same_order_type(order_type(pts((0, 0), (1, 0), (0, 1))), order_type(pts((0, 0), (1, 0))))


def test_convex_hull_and_inner_points(grid3):
    hull = convex_hull_vertices(grid3)
    assert [grid3[i] for i in hull] == pts((0, 0), (0, 2), (2, 0), (2, 2))
    assert inner_point_count(grid3) == 5
    assert inner_point_count(pts((0, 0), (1, 1), (2, 2))) == 1
    assert inner_point_count(pts((0, 0))) == 0
