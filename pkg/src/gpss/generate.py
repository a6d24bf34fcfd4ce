"""Instance generators: grids, seeded random sets, and the graph-to-points transformation.

The transformation places vertex points on the unit circle and one blocker
per edge strictly between the edge's endpoints, so that the only collinear
triples are (endpoint, endpoint, blocker). Maximum general-position subsets
of the output then correspond to maximum independent sets of the graph.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Tuple

from .geometry import Point, canonical_line, collinear
from .kernel import Instance
from .lines import collinear_groups

# outputs up to this many points are checked against the placement conditions
AUTO_VALIDATE_LIMIT = 40


class GraphFormatError(ValueError):
    pass


class PhiValidationError(AssertionError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(1, n + 1), 2))


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``i j`` (1-based). ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise GraphFormatError("empty graph file")
    lineno, head = rows[0]
    try:
        n, m = (int(v) for v in head)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected 'n m'") from None
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno}: counts must be non-negative")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(rows) - 1}")
    seen = set()
    edges = []
    for lineno, body in rows[1:]:
        try:
            u, v = (int(x) for x in body)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'i j'") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex out of range 1..{n}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def render_edge_list(g: Graph) -> str:
    return f"{g.n} {g.m}\n" + "".join(f"{u} {v}\n" for u, v in g.sorted_edges())


def circle_point(j: int) -> Point:
    """Rational point on the unit circle, distinct for each j >= 1."""
    d = 1 + j * j
    return Point(Fraction(2 * j, d), Fraction(1 - j * j, d))


@dataclass(frozen=True)
class PhiOutput:
    graph: Graph
    convex_points: Tuple[Point, ...]
    blockers: Tuple[Point, ...]  # aligned with graph.sorted_edges()

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.convex_points + self.blockers

    def max_denominator_bits(self) -> int:
        return max((max(p.x.denominator, p.y.denominator).bit_length() for p in self.points), default=0)


def _segment_hit(p: Point, q: Point, a: Point, b: Point) -> Optional[Fraction]:
    """Parameter t in (0, 1) where segment p->q crosses line ab, if any."""
    line = canonical_line(a, b)
    fp = line.a * p.x + line.b * p.y
    fq = line.a * q.x + line.b * q.y
    if fp == fq:
        if fp == line.c:
            raise PhiValidationError("segment lies on a marking line")
        return None
    t = (line.c - fp) / (fq - fp)
    return t if 0 < t < 1 else None


def phi(g: Graph, validate: Optional[bool] = None) -> PhiOutput:
    """Map a graph to a point set whose general-position subsets encode independent sets.

    Blockers are placed edge by edge in sorted edge order. On the segment
    between the endpoints, every crossing with a line spanned by two earlier
    blockers, two other vertex points, or one of each is marked; the blocker
    goes to the midpoint between the first endpoint and the nearest mark (or
    the segment midpoint if nothing is marked).
    """
    convex = tuple(circle_point(j) for j in range(1, g.n + 1))
    blockers: List[Point] = []
    for i, j in g.sorted_edges():
        pi, pj = convex[i - 1], convex[j - 1]
        others = [c for idx, c in enumerate(convex, 1) if idx not in (i, j)]
        spanning = list(combinations(blockers, 2)) + list(combinations(others, 2))
        spanning += [(b, c) for b in blockers for c in others]
        marks = [t for a, b in spanning if (t := _segment_hit(pi, pj, a, b)) is not None]
        t = min(marks) / 2 if marks else Fraction(1, 2)
        blockers.append(Point(pi.x + t * (pj.x - pi.x), pi.y + t * (pj.y - pi.y)))
    out = PhiOutput(g, convex, tuple(blockers))
    if validate or (validate is None and len(out.points) <= AUTO_VALIDATE_LIMIT):
        problems = phi_violations(out)
        if problems:
            raise PhiValidationError("; ".join(problems[:5]))
    return out


def phi_violations(out: PhiOutput) -> List[str]:
    """Brute-force check of the placement conditions; returns human-readable failures."""
    problems = []
    convex, blockers = out.convex_points, out.blockers
    edges = out.graph.sorted_edges()
    for (u, v), b in zip(edges, blockers):
        pi, pj = convex[u - 1], convex[v - 1]
        if not (collinear(pi, pj, b) and min(pi, pj) < b < max(pi, pj)):
            problems.append(f"blocker of {u}-{v} not strictly inside its segment")
        for (a, pa), (c, pc) in combinations(enumerate(convex, 1), 2):
            if (a, c) != (u, v) and collinear(b, pa, pc):
                problems.append(f"blocker of {u}-{v} collinear with vertices {a},{c}")
    for (e1, b1), (e2, b2) in combinations(zip(edges, blockers), 2):
        for a, pa in enumerate(convex, 1):
            if collinear(b1, b2, pa):
                problems.append(f"blockers of {e1},{e2} collinear with vertex {a}")
    for (e1, b1), (e2, b2), (e3, b3) in combinations(zip(edges, blockers), 3):
        if collinear(b1, b2, b3):
            problems.append(f"blockers of {e1},{e2},{e3} collinear")
    pts = out.points
    if len(set(pts)) != len(pts):
        problems.append("coincident output points")
    else:
        for grp in collinear_groups(pts):
            if len(grp) > 3:
                problems.append(f"{len(grp)} collinear points {grp.members}")
    return problems


def reduce_independent_set(g: Graph, k: int) -> Instance:
    if not 0 <= k <= g.n:
        raise ValueError("need 0 <= k <= n")
    return Instance(phi(g).points, k + g.m)


def reduce_vertex_cover(g: Graph, k: int) -> Instance:
    """Instance whose dual parameter equals the vertex cover size ``k``."""
    if not 0 <= k <= g.n:
        raise ValueError("need 0 <= k <= n")
    return Instance(phi(g).points, g.n + g.m - k)


def gen_grid(n: int) -> List[Point]:
    """The n x n integer grid, in lexicographic (x, y) order."""
    if n < 1:
        raise ValueError("grid side must be positive")
    return [Point(x, y) for x in range(n) for y in range(n)]


def gen_random(n: int, coord_bound: int, seed: int) -> List[Point]:
    """``n`` distinct integer points drawn without replacement from {0..bound}^2."""
    if coord_bound < 1 or n < 0:
        raise ValueError("need n >= 0 and coord_bound >= 1")
    side = coord_bound + 1
    if n > side * side:
        raise ValueError(f"cannot draw {n} distinct points from a {side}x{side} grid")
    cells = random.Random(seed).sample(range(side * side), n)
    return [Point(c // side, c % side) for c in cells]


def gen_random_rational(n: int, seed: int, num_bound: int = 50, den_bound: int = 12) -> List[Point]:
    """Distinct points with random fractional coordinates, for round-trip and property tests."""
    rng = random.Random(seed)
    seen = {}
    while len(seen) < n:
        p = Point(
            Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound)),
            Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound)),
        )
        seen.setdefault(p, None)
    return list(seen)
