"""Collinearity structure of a point set: maximal lines with three or more points."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .geometry import CanonicalLine, Point, canonical_line, check_distinct


@dataclass(frozen=True)
class LineGroup:
    line: CanonicalLine
    members: Tuple[int, ...]

    def __len__(self):
        return len(self.members)


def collinear_groups(points: Sequence[Point]) -> List[LineGroup]:
    """All maximal lines containing at least three of ``points``.

    Pairs are bucketed by their canonical line key, so every geometric line
    is reported once with its full, sorted member list. Groups are ordered
    by line key.
    """
    check_distinct(points)
    n = len(points)
    buckets: Dict[CanonicalLine, Tuple[int, ...]] = {}
    for i in range(n):
        p = points[i]
        local: Dict[CanonicalLine, List[int]] = {}
        for j in range(i + 1, n):
            local.setdefault(canonical_line(p, points[j]), []).append(j)
        for line, others in local.items():
            # the first member of a line sees every other member
            if len(others) >= 2 and line not in buckets:
                buckets[line] = (i, *others)
    return [LineGroup(line, tuple(buckets[line])) for line in sorted(buckets)]


def heavy_lines(points: Sequence[Point], threshold: int) -> List[LineGroup]:
    if threshold < 3:
        raise ValueError("threshold must be at least 3")
    return [g for g in collinear_groups(points) if len(g) >= threshold]


def collinearity(points: Sequence[Point]) -> int:
    """Maximum number of points on one line."""
    if not points:
        raise ValueError("collinearity of an empty set is undefined")
    groups = collinear_groups(points)
    if not groups:
        return min(len(points), 2)
    return max(len(g) for g in groups)


@dataclass(frozen=True)
class ConflictProfile:
    """Per-point conflict measure: sum over 3+-point lines through the point of (size - 2)."""

    measures: Tuple[int, ...]
    lines: Tuple[Tuple[LineGroup, ...], ...]

    def measure(self, i: int) -> int:
        return self.measures[i]

    def max_measure(self) -> int:
        return max(self.measures, default=0)


def conflict_profile(points: Sequence[Point], groups: Sequence[LineGroup] | None = None) -> ConflictProfile:
    if groups is None:
        groups = collinear_groups(points)
    measures = [0] * len(points)
    incident: List[List[LineGroup]] = [[] for _ in points]
    for g in groups:
        for i in g.members:
            measures[i] += len(g) - 2
            incident[i].append(g)
    return ConflictProfile(tuple(measures), tuple(tuple(x) for x in incident))
