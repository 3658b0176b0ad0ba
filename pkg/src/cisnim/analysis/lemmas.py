"""Empirical checks of the structural statements about S over a solved table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..engine import PairTable, tri
from ..errors import DomainError, RangeError
from .pointsets import (
    PointSet,
    b_count,
    build_Sn,
    r_count,
    s_contains,
    u_points,
)

MAX_LISTED = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    count: int = 0
    examples: list = field(default_factory=list)

    def fail(self, item) -> None:
        self.count += 1
        if len(self.examples) < MAX_LISTED:
            self.examples.append(item)

    @property
    def ok(self) -> bool:
        return self.count == 0


def _bulk_fail(res: SuiteResult, bad: np.ndarray, *cols: np.ndarray) -> None:
    idx = np.flatnonzero(bad)
    res.count += int(idx.size)
    for i in idx[:MAX_LISTED]:
        res.examples.append(tuple(int(c[i]) for c in cols))


# ---------------------------------------------------------------------------
# Table-level theorems
# ---------------------------------------------------------------------------

def check_table_theorems(t: PairTable) -> list[SuiteResult]:
    """Existence bound, tight bound, zero-column diagonal, symmetry, multiset consistency."""
    f = t.f
    xs, ys = t.pair_coords()
    z = t.third.astype(np.int64)
    n = t.n

    bound = SuiteResult("z <= x + y + |F|", checked=z.size)
    _bulk_fail(bound, z > xs + ys + f.size, xs, ys, z)

    tight = SuiteResult("z > 2 fmax + |F| implies z <= x + y")
    big = z > f.tight_threshold
    tight.checked = int(np.count_nonzero(big))
    _bulk_fail(tight, big & (z > xs + ys), xs, ys, z)

    diag = SuiteResult("{k, k, 0} is P above 2 fmax + |F|")
    ks = np.arange(f.tight_threshold + 1, n)
    diag.checked = ks.size
    dz = z[tri(ks, ks)] if ks.size else ks
    _bulk_fail(diag, dz != 0, ks, dz)

    sym = SuiteResult("third(x, y) = third(y, x)")
    sq = t.square()
    sym.checked = n * n
    bad = sq != sq.T
    if bad.any():
        bx, by = np.nonzero(bad)
        _bulk_fail(sym, np.ones(bx.size, bool), bx, by)

    ms = SuiteResult("multiset consistency")
    # {x, y, z} P  =>  third(x, z) = y and third(y, z) = x whenever in range
    for other, expect in ((xs, ys), (ys, xs)):
        hi = np.maximum(other, z)
        lo = np.minimum(other, z)
        inr = hi < n
        got = np.full(z.size, -1, dtype=np.int64)
        got[inr] = t.third[tri(hi[inr], lo[inr])]
        ms.checked += int(np.count_nonzero(inr))
        _bulk_fail(ms, inr & (got != expect), xs, ys, z)
    return [bound, tight, diag, sym, ms]


def diag_rb(t: PairTable, upto: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Arrays of r(x, x) and b(x, x) for 0 <= x < upto."""
    upto = t.n if upto is None else upto
    r = np.zeros(upto, dtype=np.int64)
    b = np.zeros(upto, dtype=np.int64)
    for x in range(1, upto):
        row = t.row(x)[:x].astype(np.int64)
        r[x] = np.count_nonzero(row > x)
        b[x] = np.count_nonzero(row < np.arange(x))
    return r, b


def check_row_lemmas(t: PairTable) -> list[SuiteResult]:
    """r(x,x) + 2 b(x,x) + 1 = x above the threshold, and b >= r off S."""
    T = t.f.threshold
    n = t.n
    r, b = diag_rb(t)
    eq = SuiteResult("r(x,x) + 2 b(x,x) + 1 = x")
    xs = np.arange(T + 1, n)
    eq.checked = xs.size
    _bulk_fail(eq, r[xs] + 2 * b[xs] + 1 != xs, xs, r[xs], b[xs])

    ineq = SuiteResult("(x,y) not in S implies b(x,y) >= r(x,y)")
    sq = t.square().astype(np.int64)
    ar = np.arange(n)
    in_s = (ar[None, :] < ar[:, None]) & (sq < ar[None, :])
    bcum = np.cumsum(in_s, axis=1)
    for y in range(T + 1, n - 1):
        col = np.sort(sq[y, :y])
        xcol = np.arange(y + 1, n)
        rr = y - np.searchsorted(col, xcol, side="left")
        bb = bcum[xcol, y]
        off = ~in_s[xcol, y]
        ineq.checked += int(np.count_nonzero(off))
        _bulk_fail(ineq, off & (bb < rr), xcol, np.full(xcol.size, y), bb, rr)
    return [eq, ineq]


# ---------------------------------------------------------------------------
# One step of the U_{x,y} -> U_{x,y+1} bijection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiStepReport:
    x: int
    y: int
    in_s: bool
    b: int
    r: int
    removed: frozenset
    added: frozenset
    discrepancies: tuple

    @property
    def identity(self) -> bool:
        return not self.removed and not self.added

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    @property
    def displacement_ok(self) -> bool:
        """x - y and x - 2y never increase along the swap."""
        for (x1, y1) in self.removed:
            for (x2, y2) in self.added:
                if x1 - y1 < x2 - y2 or x1 - 2 * y1 < x2 - 2 * y2:
                    return False
        return True


def phi_step_check(t: PairTable, x: int, y: int) -> PhiStepReport:
    if not 0 <= y < x:
        raise DomainError(f"need 0 <= y < x, got ({x}, {y})")
    before = u_points(t, x, y)
    after = u_points(t, x, y + 1)
    in_s = s_contains(t, x, y)
    b = b_count(t, x, y)
    r = r_count(t, x, y)
    removed = frozenset(before - after)
    added = frozenset(after - before)
    problems = []
    if in_s or b == 0:
        if removed or added:
            problems.append(f"expected identity, got -{sorted(removed)} +{sorted(added)}")
    else:
        want_rm = frozenset({(x, y - b)})
        want_add = frozenset({(x + r, y)})
        if removed != want_rm:
            problems.append(f"removed {sorted(removed)}, expected {sorted(want_rm)}")
        if added != want_add:
            problems.append(f"added {sorted(added)}, expected {sorted(want_add)}")
    return PhiStepReport(x, y, in_s, b, r, removed, added, tuple(problems))


# ---------------------------------------------------------------------------
# Halving map on R_{n 2^k} ∩ S_n
# ---------------------------------------------------------------------------

def r_slice(s: PointSet, n: int) -> set[tuple[int, int]]:
    out = set()
    for y in range((n + 1) // 2, n):
        xs = np.flatnonzero(s.mask[n : 2 * y + 1, y]) + n
        out.update((int(x), y) for x in xs)
    return out


@dataclass(frozen=True)
class HalveReport:
    n: int
    k: int
    fine: int
    coarse: int
    offending: tuple

    @property
    def ok(self) -> bool:
        return not self.offending


def halve_check(t: PairTable, n: int, k: int, xmax: int, *, s_n: Optional[PointSet] = None) -> HalveReport:
    """Check that (x, y) -> (x // 2, y // 2) maps R_{n 2^k} ∩ S_n onto R_{n 2^(k-1)} ∩ S_n four-to-one."""
    if n <= t.f.threshold:
        raise DomainError(f"n={n} must exceed {t.f.threshold}")
    if k < 1:
        raise DomainError("k must be >= 1")
    if xmax < (n << (k + 1)):
        raise DomainError(f"xmax={xmax} must be >= {n << (k + 1)}")
    s = build_Sn(t, n, xmax) if s_n is None else s_n
    fine = r_slice(s, n << k)
    coarse = r_slice(s, n << (k - 1))
    bad = []
    for (x, y) in sorted(fine):
        if (x // 2, y // 2) not in coarse:
            bad.append(("image outside coarse slice", (x, y)))
    for (x, y) in sorted(coarse):
        for dx in (0, 1):
            for dy in (0, 1):
                p = (2 * x + dx, 2 * y + dy)
                if p not in fine:
                    bad.append(("missing preimage", p))
    return HalveReport(n, k, len(fine), len(coarse), tuple(bad))


# ---------------------------------------------------------------------------
# Well-behavedness
# ---------------------------------------------------------------------------

WELL_BEHAVED = "well-behaved-up-to-bound"
DYADIC = "not-well-behaved-pattern"


@dataclass(frozen=True)
class WellBehavedReport:
    scanned_bound: int
    violations: tuple
    verdict: str
    c1_candidate: Optional[int] = None
    dyadic_base: Optional[int] = None


def dyadic_blocks_hold(t: PairTable, m: int, lo: int, bound: int) -> bool:
    """For lo < x < bound: (x, y) in S iff x and y share a block [m 2^(k-1), m 2^k)."""
    for x in range(lo + 1, bound):
        top = m
        while top <= x:
            top *= 2
        ys = np.arange(x)
        expect = 2 * ys >= top
        row = t.row(x)[:x].astype(np.int64)
        if not np.array_equal(row < ys, expect):
            return False
    return True


def well_behaved_scan(t: PairTable, bound: int) -> WellBehavedReport:
    if bound > t.n:
        raise RangeError(f"scan bound {bound} exceeds table size {t.n}")
    T = t.f.threshold
    viol = []
    for x in range(T + 1, bound):
        row = t.row(x)[:x]
        if np.count_nonzero(row > x) >= x - 1:
            viol.append(x)
    if viol:
        m = viol[0]
        pattern = []
        v = m
        while v < bound:
            pattern.append(v)
            v *= 2
        if viol == pattern and dyadic_blocks_hold(t, m, T + 1, bound):
            return WellBehavedReport(bound, tuple(viol), DYADIC, dyadic_base=m)
    c1 = max([T] + viol)
    return WellBehavedReport(bound, tuple(viol), WELL_BEHAVED, c1_candidate=c1)


# ---------------------------------------------------------------------------
# Row periodicity
# ---------------------------------------------------------------------------

def row_values(t: PairTable, x: int, ymax: int) -> np.ndarray:
    """third(x, y) for 0 <= y < ymax."""
    if not 0 <= x < t.n or ymax > t.n:
        raise RangeError(f"row {x} up to {ymax} outside table of size {t.n}")
    ys = np.arange(ymax, dtype=np.int64)
    hi = np.maximum(ys, x)
    lo = np.minimum(ys, x)
    return t.third[tri(hi, lo)].astype(np.int64)


def row_periodicity_probe(t: PairTable, x: int, ymax: int) -> Optional[tuple[int, int]]:
    """Smallest period p (then least offset q) with third(x, y+p) = third(x, y) + p for all y > q.

    Only y + p < ymax is examined. A candidate counts only when the periodic
    stretch covers the upper half of the window and at least two periods, so
    ``None`` means nothing fits the window, not that no period exists.
    """
    vals = row_values(t, x, ymax)
    for p in range(1, ymax):
        span = ymax - p
        if span <= 0:
            break
        fails = np.flatnonzero(vals[p:] != vals[:span] + p)
        q = int(fails[-1]) if fails.size else 0
        if q < ymax // 2 and span - 1 - q >= 2 * p:
            return p, q
    return None
