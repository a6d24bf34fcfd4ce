"""Data reduction for General Position Subset Selection.

Three reduction rules are implemented, each returning a :class:`KernelResult`
whose trace records every removal so that a solution of the reduced
instance can be lifted back to the original one:

* heavy line: a line holding at least ``C(k-2, 2) + 2`` points is removed
  entirely and ``k`` drops by two;
* free point: a point on no line with two other points is removed and
  ``k`` drops by one;
* conflict: a point whose conflict measure exceeds ``h = n - k`` is
  removed (it can be in no solution), ``k`` unchanged.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .geometry import CanonicalLine, Point, canonical_line, check_distinct
from .lines import collinear_groups, conflict_profile

# Below this value of k the cubic size bound is not claimed.
CUBIC_KERNEL_MIN_K = 29337


class LiftError(RuntimeError):
    pass


class TraceFormatError(ValueError):
    pass


class Verdict(enum.Enum):
    REDUCED = "reduced"
    YES = "decided-yes"
    NO = "decided-no"


@dataclass(frozen=True)
class Instance:
    points: Tuple[Point, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k!r}")
        check_distinct(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def h(self) -> int:
        """Dual parameter: how many points must be deleted."""
        return self.n - self.k

    def without(self, removed: Iterable[Point], k: int) -> "Instance":
        removed = set(removed)
        return Instance(tuple(p for p in self.points if p not in removed), max(k, 0))


@dataclass(frozen=True)
class HeavyLineRemoved:
    line: CanonicalLine
    points: Tuple[Point, ...]
    k_before: int


@dataclass(frozen=True)
class FreePointRemoved:
    point: Point


@dataclass(frozen=True)
class ConflictPointRemoved:
    point: Point
    measure: int


Step = Union[HeavyLineRemoved, FreePointRemoved, ConflictPointRemoved]


@dataclass(frozen=True)
class KernelTrace:
    steps: Tuple[Step, ...] = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def counts(self) -> dict:
        out = {"heavy_line": 0, "free_point": 0, "conflict_point": 0}
        for s in self.steps:
            if isinstance(s, HeavyLineRemoved):
                out["heavy_line"] += 1
            elif isinstance(s, FreePointRemoved):
                out["free_point"] += 1
            else:
                out["conflict_point"] += 1
        return out

    def replay(self, original: Instance) -> Instance:
        """Re-apply the recorded removals to ``original``."""
        removed = set()
        k = original.k
        for s in self.steps:
            if isinstance(s, HeavyLineRemoved):
                removed.update(s.points)
                k -= 2
            elif isinstance(s, FreePointRemoved):
                removed.add(s.point)
                k -= 1
            else:
                removed.add(s.point)
        return original.without(removed, k)

    def dumps(self) -> str:
        lines = []
        for s in self.steps:
            if isinstance(s, HeavyLineRemoved):
                fields = ["HEAVY_LINE", s.k_before, *s.line]
                for p in s.points:
                    fields += [p.x, p.y]
            elif isinstance(s, FreePointRemoved):
                fields = ["FREE_POINT", s.point.x, s.point.y]
            else:
                fields = ["CONFLICT_POINT", s.measure, s.point.x, s.point.y]
            lines.append("\t".join(str(f) for f in fields))
        return "".join(line + "\n" for line in lines)

    @classmethod
    def loads(cls, text: str) -> "KernelTrace":
        steps: List[Step] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip():
                continue
            kind, *rest = raw.split("\t")
            try:
                if kind == "HEAVY_LINE":
                    k_before, a, b, c = (int(v) for v in rest[:4])
                    coords = [Fraction(v) for v in rest[4:]]
                    if len(coords) % 2:
                        raise ValueError("odd number of coordinates")
                    pts = tuple(Point(coords[i], coords[i + 1]) for i in range(0, len(coords), 2))
                    steps.append(HeavyLineRemoved(CanonicalLine(a, b, c), pts, k_before))
                elif kind == "FREE_POINT":
                    x, y = rest
                    steps.append(FreePointRemoved(Point(Fraction(x), Fraction(y))))
                elif kind == "CONFLICT_POINT":
                    m, x, y = rest
                    steps.append(ConflictPointRemoved(Point(Fraction(x), Fraction(y)), int(m)))
                else:
                    raise ValueError(f"unknown step kind {kind!r}")
            except (ValueError, ZeroDivisionError) as exc:
                raise TraceFormatError(f"line {lineno}: {exc}") from None
        return cls(tuple(steps))


@dataclass(frozen=True)
class KernelResult:
    kernel: Instance
    trace: KernelTrace
    verdict: Verdict
    # witness for the original instance, when the YES verdict is cheaply constructive
    witness: Optional[Tuple[Point, ...]] = field(default=None, compare=False)


def heavy_line_threshold(k: int) -> int:
    return comb(k - 2, 2) + 2


def collinearity_bound(k: int) -> int:
    """Collinearity guaranteed after exhaustive heavy-line reduction."""
    return comb(k - 2, 2) + 1


def dual_kernel_bound(h: int) -> int:
    return 2 * h * h + h


def cubic_kernel_applies(n: int, k: int) -> bool:
    """True when ``n >= 15 k^3`` certifies a yes-instance (only proven for huge k)."""
    return k >= CUBIC_KERNEL_MIN_K and n >= 15 * k**3


def _settle(inst: Instance) -> Optional[Verdict]:
    if inst.k > inst.n:
        return Verdict.NO
    if inst.k <= 2:
        return Verdict.YES
    return None


def _finish(original: Instance, cur: Instance, steps: List[Step], verdict: Verdict) -> KernelResult:
    trace = KernelTrace(tuple(steps))
    witness = None
    if verdict is Verdict.YES and cur.k <= 2 and cur.k <= cur.n:
        witness = lift_solution(original, trace, cur.points[: cur.k])
    return KernelResult(cur, trace, verdict, witness)


def _heavy_line_pass(cur: Instance, steps: List[Step]) -> Tuple[Instance, Optional[Verdict]]:
    while True:
        verdict = _settle(cur)
        if verdict is not None:
            return cur, verdict
        threshold = heavy_line_threshold(cur.k)
        if threshold <= 2:
            # k == 3: every pair spans a heavy line
            line = canonical_line(cur.points[0], cur.points[1])
            members = tuple(p for p in cur.points if line.contains(p))
        else:
            heavy = [g for g in collinear_groups(cur.points) if len(g) >= threshold]
            if not heavy:
                return cur, None
            line = heavy[0].line
            members = tuple(cur.points[i] for i in heavy[0].members)
        steps.append(HeavyLineRemoved(line, members, cur.k))
        cur = cur.without(members, cur.k - 2)


def apply_rule_heavy_line(inst: Instance) -> KernelResult:
    """Remove heavy lines until none is left, recomputing the threshold as k drops."""
    steps: List[Step] = []
    cur, verdict = _heavy_line_pass(inst, steps)
    return _finish(inst, cur, steps, verdict or Verdict.REDUCED)


def _free_point_pass(cur: Instance, steps: List[Step]) -> Instance:
    prof = conflict_profile(cur.points)
    free = [p for p, m in zip(cur.points, prof.measures) if m == 0]
    steps.extend(FreePointRemoved(p) for p in free)
    return cur.without(free, cur.k - len(free))


def _conflict_pass(cur: Instance, steps: List[Step], h: int) -> Instance:
    prof = conflict_profile(cur.points)
    doomed = [(p, m) for p, m in zip(cur.points, prof.measures) if m > h]
    steps.extend(ConflictPointRemoved(p, m) for p, m in doomed)
    return cur.without((p for p, _ in doomed), cur.k)


def apply_rule_free_point(inst: Instance) -> KernelResult:
    # a single pass is already a fixpoint: free points lie on no 3-point line
    steps: List[Step] = []
    cur = _free_point_pass(inst, steps)
    return _finish(inst, cur, steps, _settle(cur) or Verdict.REDUCED)


def apply_rule_conflict(inst: Instance) -> KernelResult:
    if inst.k > inst.n:
        raise ValueError("conflict rule needs k <= n")
    steps: List[Step] = []
    cur = _conflict_pass(inst, steps, inst.h)
    return _finish(inst, cur, steps, _settle(cur) or Verdict.REDUCED)


def kernelize_dual(inst: Instance) -> KernelResult:
    """Kernel with at most ``2h^2 + h`` points, or a NO verdict.

    Free-point and conflict rules alternate until neither changes the
    instance. The conflict threshold is the current ``n - k``, which never
    exceeds the original ``h``.
    """
    if inst.k > inst.n:
        raise ValueError("dual kernelization needs k <= n")
    steps: List[Step] = []
    cur = inst
    while True:
        # free points go first so that even a trivially decided kernel is small
        cur = _free_point_pass(cur, steps)
        verdict = _settle(cur)
        if verdict is not None:
            return _finish(inst, cur, steps, verdict)
        before = cur.n
        cur = _conflict_pass(cur, steps, cur.h)
        if cur.n == before:
            break
    if cur.n > dual_kernel_bound(cur.h):
        return _finish(inst, cur, steps, Verdict.NO)
    return _finish(inst, cur, steps, Verdict.REDUCED)


def kernelize_primal(inst: Instance) -> KernelResult:
    """Exhaustive heavy-line reduction plus the cubic-size certificate branch."""
    res = apply_rule_heavy_line(inst)
    if res.verdict is Verdict.REDUCED and cubic_kernel_applies(res.kernel.n, res.kernel.k):
        return KernelResult(res.kernel, res.trace, Verdict.YES, None)
    return res


def _pick_two_on_line(solution: Sequence[Point], candidates: Sequence[Point]) -> List[Point]:
    blocked = {canonical_line(a, b) for i, a in enumerate(solution) for b in solution[i + 1:]}
    good = []
    for p in candidates:
        if not any(line.contains(p) for line in blocked):
            good.append(p)
            if len(good) == 2:
                break
    return good


def lift_solution(original: Instance, trace: KernelTrace, kernel_solution: Sequence[Point]) -> Tuple[Point, ...]:
    """Turn a solution of the reduced instance into one of ``original``.

    Steps are replayed backwards: free points are re-inserted, and for each
    removed heavy line two of its points avoiding every line spanned by the
    current solution are added. If the solution is larger than the step
    needs and blocks too much of the line, it is trimmed to ``k - 2`` first,
    for which the line's size guarantees two usable points.
    """
    sol = list(kernel_solution)
    for step in reversed(trace.steps):
        if isinstance(step, FreePointRemoved):
            sol.append(step.point)
        elif isinstance(step, HeavyLineRemoved):
            extra = _pick_two_on_line(sol, step.points)
            if len(extra) < 2 and len(sol) > step.k_before - 2:
                sol = sol[: max(step.k_before - 2, 0)]
                extra = _pick_two_on_line(sol, step.points)
            if len(extra) < 2:
                raise LiftError(f"lift failed: line {step.line} has no two usable points")
            sol.extend(extra)
    allowed = set(original.points)
    if any(p not in allowed for p in sol):
        raise LiftError("lift failed: solution point outside the original instance")
    return tuple(sol)
