"""Exact planar primitives over the rationals.

Every predicate here works on :class:`fractions.Fraction` coordinates, so
orientation and collinearity tests are error-free. There is no tolerance
anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from numbers import Rational
from typing import Dict, NamedTuple, Sequence, Tuple


class DegenerateLineError(ValueError):
    pass


class DuplicatePointError(ValueError):
    pass


def to_fraction(value) -> Fraction:
    """Coerce an exact value (int, Fraction, or a string such as ``"3/4"``)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    raise TypeError(f"exact coordinate required, got {type(value).__name__}")


@dataclass(frozen=True, order=True)
class Point:
    """A point with exact rational coordinates, ordered lexicographically by (x, y)."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_fraction(self.x))
        object.__setattr__(self, "y", to_fraction(self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    def __str__(self):
        return f"({self.x}, {self.y})"


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p).

    +1 for a counter-clockwise turn, -1 for clockwise, 0 when collinear
    (including coincident points).
    """
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (det > 0) - (det < 0)


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orientation(p, q, r) == 0


class CanonicalLine(NamedTuple):
    """Line ``a*x + b*y = c`` with coprime integers and a fixed sign."""

    a: int
    b: int
    c: int

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y == self.c

    def __str__(self):
        return f"{self.a}x{self.b:+d}y={self.c}"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def canonical_line(p: Point, q: Point) -> CanonicalLine:
    if p == q:
        raise DegenerateLineError("degenerate line: identical points")
    a = q.y - p.y
    b = p.x - q.x
    c = a * p.x + b * p.y
    scale = _lcm(_lcm(a.denominator, b.denominator), c.denominator)
    ia, ib, ic = int(a * scale), int(b * scale), int(c * scale)
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return CanonicalLine(ia, ib, ic)


def check_distinct(points: Sequence[Point]) -> None:
    seen = {}
    for i, p in enumerate(points):
        if p in seen:
            raise DuplicatePointError(f"duplicate point {p} at positions {seen[p]} and {i}")
        seen[p] = i


@dataclass(frozen=True)
class OrderType:
    """Orientation sign of every index triple i < j < k (0-based)."""

    n: int
    sigma: Dict[Tuple[int, int, int], int]

    def __eq__(self, other):
        if not isinstance(other, OrderType):
            return NotImplemented
        return same_order_type(self, other)

    __hash__ = None


def order_type(points: Sequence[Point]) -> OrderType:
    check_distinct(points)
    sigma = {
        (i, j, k): orientation(points[i], points[j], points[k])
        for i, j, k in combinations(range(len(points)), 3)
    }
    return OrderType(len(points), sigma)


def same_order_type(a: OrderType, b: OrderType) -> bool:
    """Identity of order types under the given orderings (no relabelling search)."""
    return a.n == b.n and a.sigma == b.sigma


def convex_hull_vertices(points: Sequence[Point]) -> list[int]:
    """Indices of the strict convex hull vertices (points interior to hull edges excluded)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) <= 2:
        return sorted(order)

    def chain(idx):
        out = []
        for i in idx:
            while len(out) >= 2 and orientation(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    return sorted(set(hull))


def inner_point_count(points: Sequence[Point]) -> int:
    """Number of points that are not vertices of the convex hull."""
    return len(points) - len(convex_hull_vertices(points))
