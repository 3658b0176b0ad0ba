"""Positions, moves and forbidden sets for three-heap unlabeled Nim with deleted vertices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError, ParseError


class Position(tuple):
    """A multiset of three heap sizes, stored sorted descending (a >= b >= c)."""

    __slots__ = ()

    def __new__(cls, x: int, y: int, z: int) -> "Position":
        vals = (int(x), int(y), int(z))
        if min(vals) < 0:
            raise DomainError(f"heap sizes must be non-negative, got {vals}")
        return tuple.__new__(cls, sorted(vals, reverse=True))

    def __getnewargs__(self):
        return tuple(self)

    def __repr__(self) -> str:
        return f"Position{tuple.__repr__(self)}"

    @property
    def a(self) -> int:
        return self[0]

    @property
    def b(self) -> int:
        return self[1]

    @property
    def c(self) -> int:
        return self[2]

    @property
    def total(self) -> int:
        return self[0] + self[1] + self[2]


def canonicalize(x: int, y: int, z: int) -> Position:
    return Position(x, y, z)


@dataclass(frozen=True)
class ForbiddenSet:
    """Finite set of deleted positions.

    ``fmax`` is the largest single heap value among the members (0 when
    empty); the two derived thresholds ``tight_threshold = 2*fmax + size``
    and ``threshold = 4*fmax + 3*size`` recur throughout the analysis.
    """

    members: frozenset = frozenset()

    def __post_init__(self):
        canon = frozenset(Position(*m) for m in self.members)
        object.__setattr__(self, "members", canon)

    @classmethod
    def of(cls, positions: Iterable[Iterable[int]] = ()) -> "ForbiddenSet":
        return cls(frozenset(Position(*p) for p in positions))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def fmax(self) -> int:
        return max((p[0] for p in self.members), default=0)

    @property
    def tight_threshold(self) -> int:
        return 2 * self.fmax + self.size

    @property
    def threshold(self) -> int:
        return 4 * self.fmax + 3 * self.size

    def __contains__(self, p) -> bool:
        return tuple(sorted(p, reverse=True)) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Position]:
        return iter(self.sorted())

    def sorted(self) -> list[Position]:
        """Members in ascending lexicographic order of their sorted triples."""
        return sorted(self.members)

    def union(self, other: "ForbiddenSet") -> "ForbiddenSet":
        return ForbiddenSet(self.members | other.members)

    __or__ = union

    def __repr__(self) -> str:
        return f"ForbiddenSet({[tuple(p) for p in self.sorted()]})"


EMPTY = ForbiddenSet()


def children(p: Position, f: ForbiddenSet = EMPTY) -> set[Position]:
    """All positions reachable by lowering one heap, minus the deleted ones."""
    p = Position(*p)
    if p in f:
        raise DomainError(f"{tuple(p)} is forbidden and has no moves")
    a, b, c = p
    out = set()
    for v in range(a):
        out.add(Position(v, b, c))
    for v in range(b):
        out.add(Position(a, v, c))
    for v in range(c):
        out.add(Position(a, b, v))
    return {q for q in out if q not in f.members}


def misere_forbidden() -> ForbiddenSet:
    # (0,0,0) is the only Nim position without children
    return ForbiddenSet.of([(0, 0, 0)])


def parse_forbidden(text: str | Iterable[str]) -> ForbiddenSet:
    """Parse the forbidden-file format.

    One position per line as three whitespace-separated non-negative
    integers; blank lines and ``#`` comments are skipped.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    found = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(lineno, f"expected 3 integers, got {len(tokens)} tokens")
        try:
            vals = [int(tok, 10) for tok in tokens]
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        if min(vals) < 0:
            raise ParseError(lineno, f"negative heap size in {line!r}")
        found.append(Position(*vals))
    return ForbiddenSet(frozenset(found))


def read_forbidden(path) -> ForbiddenSet:
    with open(path, encoding="utf-8") as fh:
        return parse_forbidden(fh.read())


def format_forbidden(f: ForbiddenSet) -> str:
    return "".join(f"{a} {b} {c}\n" for a, b, c in f.sorted())
