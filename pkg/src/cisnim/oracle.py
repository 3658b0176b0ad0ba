"""Brute-force P/N classification by backward induction over a bounded box.

Deliberately slow and simple: every fast path in the package is checked
against :func:`solve_box`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, ResourceError
from .rules import EMPTY, ForbiddenSet, Position, children

DEFAULT_MAX_BOUND = 128


class Status(enum.Enum):
    P = "P"
    N = "N"
    FORBIDDEN = "Forbidden"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BoxSolution:
    bound: int
    f: ForbiddenSet
    status: Mapping[Position, Status] = field(repr=False)
    ignored_forbidden: tuple = ()

    def __getitem__(self, p) -> Status:
        return self.status[Position(*p)]

    def p_positions(self) -> list[Position]:
        return [p for p, s in self.status.items() if s is Status.P]


def box_positions(bound: int) -> list[Position]:
    """Canonical positions with all heaps < bound, ascending by total then lexicographically."""
    out = [Position(a, b, c) for a in range(bound) for b in range(a + 1) for c in range(b + 1)]
    out.sort(key=lambda p: (p.total, p))
    return out


def solve_box(bound: int, f: ForbiddenSet = EMPTY, *, max_bound: int = DEFAULT_MAX_BOUND) -> BoxSolution:
    if bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")
    if bound > max_bound:
        raise ResourceError(f"box bound {bound} exceeds ceiling {max_bound}")
    ignored = tuple(p for p in f.sorted() if p[0] >= bound)
    status: dict[Position, Status] = {}
    for p in box_positions(bound):
        if p in f.members:
            status[p] = Status.FORBIDDEN
        elif any(status[q] is Status.P for q in children(p, f)):
            status[p] = Status.N
        else:
            status[p] = Status.P
    return BoxSolution(bound, f, status, ignored)


def partition_violations(sol: BoxSolution) -> list[Position]:
    """Positions breaking the P/N partition property (empty for a correct solution)."""
    bad = []
    for p, s in sol.status.items():
        if s is Status.FORBIDDEN:
            continue
        has_p_child = any(sol.status[q] is Status.P for q in children(p, sol.f))
        if (s is Status.P) == has_p_child:
            bad.append(p)
    return bad
