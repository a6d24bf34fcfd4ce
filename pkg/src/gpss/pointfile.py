"""Plain-text point files: one ``X Y`` pair per line, integers or ``num/den`` fractions."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, List, Sequence

from .geometry import Point

_NUMBER = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class PointFileError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _number(token: str, lineno: int) -> Fraction:
    if not _NUMBER.match(token):
        raise PointFileError(lineno, f"not an integer or fraction: {token!r}")
    if "/" in token and int(token.split("/")[1]) == 0:
        raise PointFileError(lineno, f"zero denominator in {token!r}")
    return Fraction(token)


def parse_points(text: str) -> List[Point]:
    points: List[Point] = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise PointFileError(lineno, f"expected 2 coordinates, got {len(tokens)}")
        p = Point(_number(tokens[0], lineno), _number(tokens[1], lineno))
        if p in seen:
            raise PointFileError(lineno, f"duplicate point {tokens[0]} {tokens[1]} (first on line {seen[p]})")
        seen[p] = lineno
        points.append(p)
    return points


def render_points(points: Iterable[Point], header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines += [f"{p.x} {p.y}" for p in points]
    return "".join(line + "\n" for line in lines)


def read_points(path: str) -> List[Point]:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())


def write_points(path: str, points: Iterable[Point], header: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_points(points, header))


def parse_indices(text: str) -> List[int]:
    """Whitespace-separated 0-based indices; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for token in raw.split("#", 1)[0].split():
            if not re.fullmatch(r"\d+", token):
                raise PointFileError(lineno, f"not an index: {token!r}")
            out.append(int(token))
    return out
