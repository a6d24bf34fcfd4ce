"""Exact and heuristic solvers, plus the general-position verifier."""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Point, canonical_line, check_distinct
from .kernel import Instance, Verdict, kernelize_dual, lift_solution
from .lines import collinear_groups

BRUTE_FORCE_CAP = 22
LINE_COVER_CAP = 16


class OracleTooLarge(ValueError):
    pass


class Certificate(enum.Enum):
    OPTIMAL = "optimal"  # decided by exhaustive search
    FEASIBLE_ONLY = "feasible-only"
    INFEASIBLE = "infeasible"


def _check_indices(points: Sequence[Point], candidate) -> List[int]:
    idx = list(candidate)
    for i in idx:
        if not isinstance(i, int) or not 0 <= i < len(points):
            raise IndexError(f"invalid point index {i!r}")
    if len(set(idx)) != len(idx):
        raise ValueError("candidate indices must be distinct")
    return idx


def find_collinear_triple(points: Sequence[Point], candidate) -> Optional[Tuple[int, int, int]]:
    """A collinear triple inside ``candidate``, or None if it is in general position."""
    idx = sorted(_check_indices(points, candidate))
    seen: Dict[object, Tuple[int, int]] = {}
    for a, b in combinations(idx, 2):
        line = canonical_line(points[a], points[b])
        if line in seen:
            # two pairs on one line: the line holds at least three candidates
            return tuple(sorted({a, b, *seen[line]}))[:3]
        seen[line] = (a, b)
    return None


def verify(points: Sequence[Point], candidate) -> bool:
    return find_collinear_triple(points, candidate) is None


@dataclass(frozen=True)
class Solution:
    chosen: Tuple[int, ...]
    certificate: Certificate
    points: Tuple[Point, ...] = ()
    stats: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, points: Sequence[Point], chosen, certificate: Certificate, **stats) -> "Solution":
        chosen = tuple(sorted(chosen))
        if not verify(points, chosen):
            raise AssertionError("solver produced a set that is not in general position")
        return cls(chosen, certificate, tuple(points[i] for i in chosen), stats)

    @property
    def feasible(self) -> bool:
        return self.certificate is not Certificate.INFEASIBLE

    def __len__(self):
        return len(self.chosen)


@dataclass(frozen=True)
class TripleSystem:
    universe: Tuple[int, ...]
    triples: Tuple[Tuple[int, int, int], ...]


def enumerate_triples(points: Sequence[Point]) -> TripleSystem:
    triples = set()
    for g in collinear_groups(points):
        triples.update(combinations(g.members, 3))
    return TripleSystem(tuple(range(len(points))), tuple(sorted(triples)))


def solve_brute(inst: Instance, cap: int = BRUTE_FORCE_CAP) -> Solution:
    """Try every k-subset in lexicographic index order."""
    if inst.n > cap:
        raise OracleTooLarge(f"instance too large for oracle ({inst.n} > {cap} points)")
    pts = inst.points
    if inst.k > inst.n:
        return Solution((), Certificate.INFEASIBLE, stats={"subsets": 0})
    line_id: Dict[Tuple[int, int], object] = {
        (a, b): canonical_line(pts[a], pts[b]) for a, b in combinations(range(inst.n), 2)
    }
    checked = 0
    for subset in combinations(range(inst.n), inst.k):
        checked += 1
        seen = set()
        ok = True
        for pair in combinations(subset, 2):
            line = line_id[pair]
            if line in seen:
                ok = False
                break
            seen.add(line)
        if ok:
            return Solution.build(pts, subset, Certificate.OPTIMAL, subsets=checked)
    return Solution((), Certificate.INFEASIBLE, stats={"subsets": checked})


_UNDECIDED, _DELETED, _KEPT = 0, 1, 2


class _HittingSearch:
    """Bounded search for a set of at most ``budget`` points meeting every collinear triple.

    Works on maximal lines rather than explicit triples: a line is violated
    while three or more of its points survive. Branching takes three
    surviving points of the most violated line and tries deleting each in
    turn, marking earlier alternatives as kept. A line with two kept points
    forces deletion of its remaining points.
    """

    def __init__(self, n: int, lines: Sequence[Tuple[int, ...]]):
        self.n = n
        self.lines = [tuple(m) for m in lines]
        self.point_lines: List[List[int]] = [[] for _ in range(n)]
        for li, members in enumerate(self.lines):
            for p in members:
                self.point_lines[p].append(li)
        self.state = [_UNDECIDED] * n
        self.alive = [len(m) for m in self.lines]
        self.kept = [0] * len(self.lines)
        self.trail: List[int] = []
        self.deleted = 0
        self.nodes = 0

    def _set(self, p: int, value: int) -> None:
        self.state[p] = value
        self.trail.append(p)
        if value == _DELETED:
            self.deleted += 1
            for li in self.point_lines[p]:
                self.alive[li] -= 1
        else:
            for li in self.point_lines[p]:
                self.kept[li] += 1

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            p = self.trail.pop()
            if self.state[p] == _DELETED:
                self.deleted -= 1
                for li in self.point_lines[p]:
                    self.alive[li] += 1
            else:
                for li in self.point_lines[p]:
                    self.kept[li] -= 1
            self.state[p] = _UNDECIDED

    def _propagate(self, budget: int, touched: Sequence[int]) -> bool:
        queue = list(touched)
        while queue:
            li = queue.pop()
            if self.kept[li] > 2:
                return False
            if self.kept[li] == 2 and self.alive[li] > 2:
                for p in self.lines[li]:
                    if self.state[p] == _UNDECIDED:
                        self._set(p, _DELETED)
                        if self.deleted > budget:
                            return False
                        queue.extend(self.point_lines[p])
        return True

    def _lower_bound(self, violated: Sequence[int]) -> int:
        used = set()
        total = 0
        for li in sorted(violated, key=lambda i: -self.alive[i]):
            members = [p for p in self.lines[li] if self.state[p] != _DELETED]
            if used.isdisjoint(members):
                used.update(members)
                total += self.alive[li] - 2
        return total

    def assign(self, p: int, value: int, budget: int) -> bool:
        if self.state[p] != _UNDECIDED:
            # already forced by propagation
            return self.state[p] == value
        self._set(p, value)
        if self.deleted > budget:
            return False
        return self._propagate(budget, self.point_lines[p])

    def branches(self, budget: int):
        """Violated-line branching choices, or None when every line is satisfied."""
        violated = [li for li, a in enumerate(self.alive) if a > 2]
        if not violated:
            return None
        if self.deleted + self._lower_bound(violated) > budget:
            return []
        line = max(violated, key=lambda li: (self.alive[li], -li))
        members = self.lines[line]
        alive = [p for p in members if self.state[p] == _KEPT]
        alive += [p for p in members if self.state[p] == _UNDECIDED]
        triple = alive[:3]
        out = []
        keep: List[int] = []
        for p in triple:
            if self.state[p] == _KEPT:
                continue
            out.append((tuple(keep), p))
            keep.append(p)
        return out

    def run(self, budget: int) -> bool:
        self.nodes += 1
        choices = self.branches(budget)
        if choices is None:
            return True
        for keep, drop in choices:
            mark = len(self.trail)
            ok = all(self.assign(q, _KEPT, budget) for q in keep) and self.assign(drop, _DELETED, budget)
            if ok and self.run(budget):
                return True
            self._undo(mark)
        return False

    def deletion_set(self) -> List[int]:
        return [p for p in range(self.n) if self.state[p] == _DELETED]


def _subtree(args):
    n, lines, keep, drop, budget = args
    search = _HittingSearch(n, lines)
    ok = all(search.assign(q, _KEPT, budget) for q in keep) and search.assign(drop, _DELETED, budget)
    found = ok and search.run(budget)
    return found, search.deletion_set() if found else None, search.nodes


def _min_hitting_set(n: int, lines, max_budget: int, workers: int = 1):
    """Smallest deletion set of size <= max_budget, by iterative deepening on the budget."""
    probe = _HittingSearch(n, lines)
    violated = [li for li, a in enumerate(probe.alive) if a > 2]
    start = probe._lower_bound(violated) if violated else 0
    nodes = 0
    for budget in range(start, max_budget + 1):
        search = _HittingSearch(n, lines)
        if workers <= 1:
            found = search.run(budget)
            nodes += search.nodes
            if found:
                return search.deletion_set(), nodes
            continue
        nodes += 1
        choices = search.branches(budget)
        if choices is None:
            return [], nodes
        jobs = [(n, lines, keep, drop, budget) for keep, drop in choices]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_subtree, jobs))
        nodes += sum(r[2] for r in results)
        for found, deletion, _ in results:
            if found:
                return deletion, nodes
    return None, nodes


def solve_hitting(inst: Instance, workers: int = 1) -> Solution:
    """Decide the instance through a minimum hitting set of its collinear triples.

    The budget grows from a packing lower bound up to ``h = n - k``, so a
    yes-answer comes with a maximum general-position subset.
    """
    if inst.k > inst.n:
        return Solution((), Certificate.INFEASIBLE, stats={"nodes": 0})
    groups = collinear_groups(inst.points)
    lines = [g.members for g in groups]
    deletion, nodes = _min_hitting_set(inst.n, lines, inst.h, workers)
    if deletion is None:
        return Solution((), Certificate.INFEASIBLE, stats={"nodes": nodes})
    removed = set(deletion)
    chosen = [i for i in range(inst.n) if i not in removed]
    return Solution.build(inst.points, chosen, Certificate.OPTIMAL, nodes=nodes)


def maximum_general_position(points: Sequence[Point], workers: int = 1) -> Solution:
    return solve_hitting(Instance(tuple(points), 0), workers)


def solve_greedy(inst: Instance) -> Solution:
    """Scan points in order, keeping each one that closes no collinear triple."""
    pts = inst.points
    chosen: List[int] = []
    blocked = set()
    for i, p in enumerate(pts):
        spans = [canonical_line(pts[c], p) for c in chosen]
        if any(line in blocked for line in spans):
            continue
        blocked.update(spans)
        chosen.append(i)
    return Solution.build(pts, chosen, Certificate.FEASIBLE_ONLY)


def min_line_cover(points: Sequence[Point], cap: int = LINE_COVER_CAP) -> Optional[int]:
    """Exact line cover number by branch and bound; None when ``len(points) > cap``.

    The lowest uncovered point must lie on some cover line, and that line can
    be taken through a second input point unless the point is alone.
    """
    if isinstance(points, Instance):
        points = points.points
    n = len(points)
    if n > cap:
        return None
    if n == 0:
        return 0
    check_distinct(points)
    masks: Dict[object, int] = {}
    for a, b in combinations(range(n), 2):
        line = canonical_line(points[a], points[b])
        masks[line] = masks.get(line, 0) | (1 << a) | (1 << b)
    all_lines = sorted(set(masks.values()), key=lambda m: (-bin(m).count("1"), m))
    through = [[m for m in all_lines if m >> p & 1] or [1 << p] for p in range(n)]

    best = (n + 1) // 2 if n > 1 else 1  # pair the points up

    def dfs(uncovered: int, used: int) -> None:
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        widest = max(bin(m & uncovered).count("1") for m in all_lines) if all_lines else 1
        remaining = bin(uncovered).count("1")
        if used + -(-remaining // max(widest, 1)) >= best:
            return
        p = (uncovered & -uncovered).bit_length() - 1
        for m in sorted(through[p], key=lambda m: -bin(m & uncovered).count("1")):
            dfs(uncovered & ~m, used + 1)

    dfs((1 << n) - 1, 0)
    return best


def solve_auto(inst: Instance, workers: int = 1) -> Solution:
    """Dual kernel, then hitting-set search on the kernel, then lift to the input."""
    if inst.k > inst.n:
        return Solution((), Certificate.INFEASIBLE, stats={"verdict": Verdict.NO.value})
    res = kernelize_dual(inst)
    stats = {"kernel_verdict": res.verdict.value, "kernel_size": res.kernel.n, **res.trace.counts()}
    if res.verdict is Verdict.NO:
        return Solution((), Certificate.INFEASIBLE, stats=stats)
    if res.verdict is Verdict.YES:
        lifted = res.witness
    else:
        sub = solve_hitting(res.kernel, workers)
        stats["nodes"] = sub.stats.get("nodes", 0)
        if not sub.feasible:
            return Solution((), Certificate.INFEASIBLE, stats=stats)
        lifted = lift_solution(inst, res.trace, sub.points)
    index = {p: i for i, p in enumerate(inst.points)}
    return Solution.build(inst.points, [index[p] for p in lifted], Certificate.OPTIMAL, **stats)
