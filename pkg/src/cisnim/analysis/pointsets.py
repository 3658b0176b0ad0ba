"""Table-derived queries on the pair set S and its hole-free approximations.

S holds the ordered pairs (x, y) for which some P-position {x, y, z} has
z < y < x. Every query here reads the solved table; nothing is stored
separately. Point sets are dense boolean masks indexed ``mask[x, y]`` and
are exact only for first coordinates up to their ``xmax``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from ..engine import PairTable, third_of
from ..errors import DomainError, RangeError


def _check_row(t: PairTable, v: int) -> None:
    if not 0 <= v < t.n:
        raise RangeError(f"row {v} outside table of size {t.n}; re-solve with larger n")


def s_contains(t: PairTable, x: int, y: int) -> bool:
    _check_row(t, max(x, y))
    return x > y and third_of(t, x, y) < y


def r_count(t: PairTable, x: int, y: int) -> int:
    """Number of (x', y) in S with x' >= x."""
    _check_row(t, y)
    low = y + 1 if x <= y else x
    return int(np.count_nonzero(t.row(y)[:y] >= low))


def b_count(t: PairTable, x: int, y: int) -> int:
    """Number of (x, y') in S with y' <= y."""
    _check_row(t, x)
    if y < 0:
        return 0
    top = min(y, x - 1)
    row = t.row(x)[: top + 1].astype(np.int64)
    return int(np.count_nonzero(row < np.arange(top + 1)))


def rb_diag(t: PairTable, x: int) -> tuple[int, int]:
    """(r(x, x), b(x, x)) from a single row scan."""
    if x < 1:
        raise DomainError("rb_diag needs x >= 1")
    _check_row(t, x)
    row = t.row(x)[:x].astype(np.int64)
    return int(np.count_nonzero(row > x)), int(np.count_nonzero(row < np.arange(x)))


def is_hole(t: PairTable, x: int, y: int) -> bool:
    if x <= y:
        raise DomainError(f"holes need x > y, got ({x}, {y})")
    return not s_contains(t, x, y) and b_count(t, x, y) > 0


def row_b_cumulative(t: PairTable, x: int) -> np.ndarray:
    """``out[y] = b(x, y)`` for 0 <= y < x."""
    row = t.row(x)[:x].astype(np.int64)
    return np.cumsum(row < np.arange(x))


def diag_b(t: PairTable, upto: int) -> np.ndarray:
    """``out[x] = b(x, x)`` for 0 <= x <= upto."""
    _check_row(t, upto)
    return np.array([rb_diag(t, x)[1] if x else 0 for x in range(upto + 1)], dtype=np.int64)


# ---------------------------------------------------------------------------
# Point sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite set of ordered pairs, exact for first coordinates <= xmax."""

    mask: np.ndarray

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, int]], xmax: int) -> "PointSet":
        mask = np.zeros((xmax + 1, xmax + 1), dtype=bool)
        for x, y in points:
            if not 0 <= x <= xmax:
                raise DomainError(f"point {(x, y)} lies beyond xmax={xmax}")
            if not 0 <= y <= xmax:
                raise DomainError(f"point {(x, y)} has second coordinate outside the grid")
            mask[x, y] = True
        return cls(mask)

    @property
    def xmax(self) -> int:
        return self.mask.shape[0] - 1

    @cached_property
    def points(self) -> frozenset:
        xs, ys = np.nonzero(self.mask)
        return frozenset(zip(xs.tolist(), ys.tolist()))

    def __contains__(self, p) -> bool:
        x, y = p
        if x > self.xmax:
            raise RangeError(f"membership of {(x, y)} is undetermined beyond xmax={self.xmax}")
        if x < 0 or y < 0 or y > self.xmax:
            return False
        return bool(self.mask[x, y])

    def __len__(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __iter__(self):
        return iter(sorted(self.points))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.xmax == other.xmax and np.array_equal(self.mask, other.mask)

    def restrict(self, xmax: int) -> "PointSet":
        if xmax > self.xmax:
            raise RangeError(f"cannot widen a set known only up to xmax={self.xmax}")
        return PointSet(self.mask[: xmax + 1, : xmax + 1].copy())

    def with_point(self, p, present: bool = True) -> "PointSet":
        mask = self.mask.copy()
        mask[p[0], p[1]] = present
        return PointSet(mask)


def _check_region_args(t: PairTable, x: int, y: int) -> None:
    if x <= t.f.threshold:
        raise DomainError(f"x={x} must exceed 4*fmax + 3*|F| = {t.f.threshold}")
    if not 0 <= y <= x:
        raise DomainError(f"need 0 <= y <= x, got y={y}")
    if x >= t.n:
        raise DomainError(f"table of size {t.n} too small for x={x}")


def u_points(t: PairTable, x: int, y: int) -> set[tuple[int, int]]:
    """The four-region union U_{x,y} as a plain set of pairs."""
    _check_region_args(t, x, y)
    pts = set()
    for xp in range(1, x + 1):
        bb = rb_diag(t, xp)[1]
        pts.update((xp, yp) for yp in range(max(0, xp - bb), xp))
    if y >= 1:
        bb = b_count(t, x, y - 1)
        pts.update((x, yp) for yp in range(max(0, y - bb), y))
    for yp in range(y, x):
        rr = r_count(t, x, yp)
        pts.update((xp, yp) for xp in range(x, x + rr))
    for yp in range(y):
        rr = r_count(t, x + 1, yp)
        pts.update((xp, yp) for xp in range(x + 1, x + 1 + rr))
    return pts


def build_U(t: PairTable, x: int, y: int) -> PointSet:
    pts = u_points(t, x, y)
    xmax = max([x] + [p[0] for p in pts])
    return PointSet.from_points(pts, xmax)


def build_Ubar(t: PairTable, x: int, y: int, xmax: int) -> PointSet:
    """Extend U_{x,y} to second coordinates >= x by the halving mirror rule.

    A pair (x', y') with y' >= x belongs iff y' < x' < 2y' and the mirror
    (y', x' // 2) does not. Mirrors have smaller first coordinate, so rows are
    decided in ascending x'. The pair (2y', y') is excluded: its mirror is the
    diagonal point (y', y'), and admitting it would break both the halving
    symmetry and the identity U_{x,x} = U_{x+1,0}.
    """
    if xmax < x:
        raise DomainError(f"xmax={xmax} must be >= x={x}")
    pts = u_points(t, x, y)
    mask = np.zeros((xmax + 1, xmax + 1), dtype=bool)
    for xp, yp in pts:
        if xp <= xmax:
            mask[xp, yp] = True
    for xp in range(x + 1, xmax + 1):
        ys = np.arange(max(x, xp // 2 + 1), xp)
        if ys.size:
            mask[xp, ys] = ~mask[ys, xp // 2]
    return PointSet(mask)


def build_Sn(t: PairTable, n: int, xmax: int) -> PointSet:
    return build_Ubar(t, n, 0, xmax)


def count_R(s: PointSet, n: int) -> int:
    """|R_n ∩ s| where R_n = {(x, y): y < n <= x <= 2y}."""
    if s.xmax < 2 * (n - 1):
        raise DomainError(f"xmax={s.xmax} cannot cover R_{n}; need >= {2 * (n - 1)}")
    total = 0
    for y in range((n + 1) // 2, n):
        total += int(np.count_nonzero(s.mask[n : 2 * y + 1, y]))
    return total


def h_value(t: PairTable, m: int, n: int, xmax: int) -> int:
    if xmax < 2 * (n - 1):
        raise DomainError(f"xmax={xmax} too small for h(., {n}); need >= {2 * (n - 1)}")
    return count_R(build_Sn(t, m, xmax), n)


def f_weight(p: tuple[int, int], n: int) -> int:
    x, y = p
    return n + 2 * x - 3 * y + 2


class GValue(NamedTuple):
    """A potential sum together with the first-coordinate bound it was truncated at."""

    value: int
    xmax: int


def g_of(s: PointSet, n: int) -> GValue:
    xs, ys = np.nonzero(s.mask)
    keep = 2 * ys - xs <= n
    xs, ys = xs[keep].astype(np.int64), ys[keep].astype(np.int64)
    return GValue(int((n + 2 * xs - 3 * ys + 2).sum()), s.xmax)


def g_value(t: PairTable, m: int, n: int, xmax: int) -> GValue:
    return g_of(build_Sn(t, m, xmax), n)
