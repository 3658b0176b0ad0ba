"""Counting functions, the ordinary-Nim closed form and scale series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..engine import DEFAULT_MAX_BYTES, PairTable, PiCounts, pi_counts, pi_curve, solve
from ..errors import DomainError, RangeError
from ..rules import ForbiddenSet
from .pointsets import h_value


def pi_nim_closed(x: int) -> int:
    """Number of P-positions of ordinary Nim with every heap < x."""
    if x < 1:
        raise DomainError("closed form needs x >= 1")
    y = 1 << (x.bit_length() - 1)
    num = 3 * x * x - 6 * x * y + 4 * y * y + 3 * x + 2
    q, rem = divmod(num, 6)
    assert rem == 0, f"closed form not integral at x={x}"
    return q


def pi_lower_bound(size: int, fsize: int) -> Fraction:
    """Guaranteed minimum of pi(size): a quarter of the pairs below (size-|F|)/2, over six."""
    return Fraction(max(0, size - fsize) ** 2, 24)


@dataclass(frozen=True)
class ScaleReport:
    base: int
    values: tuple  # Fractions, index k
    kind: str = "pi-based"
    fsize: int = 0

    @property
    def deltas(self) -> tuple:
        v = self.values
        return tuple(abs(v[k + 1] - v[k]) for k in range(len(v) - 1))

    def deltas_nonincreasing(self) -> bool:
        d = self.deltas
        return all(d[k + 1] <= d[k] for k in range(len(d) - 1))

    def bound_violations(self) -> list[int]:
        """Indices k whose value leaves the range the kind allows."""
        bad = []
        for k, z in enumerate(self.values):
            if self.kind == "pi-based":
                size = self.base << k
                lo = pi_lower_bound(size, self.fsize) / (size * size)
                if not lo <= z <= 1:
                    bad.append(k)
            elif not 0 <= z <= 8 * self.base ** 2:
                bad.append(k)
        return bad


def zeta_from_table(t: PairTable, n: int, kmax: int) -> ScaleReport:
    if n < 1 or kmax < 0:
        raise DomainError("need n >= 1 and kmax >= 0")
    top = n << kmax
    if top > t.n:
        raise RangeError(f"series up to {top} needs a table with n >= {top}")
    curve = pi_curve(t, top)
    vals = tuple(Fraction(int(curve[n << k]), (n << k) ** 2) for k in range(kmax + 1))
    return ScaleReport(n, vals, "pi-based", t.f.size)


def zeta_series(f: ForbiddenSet, n: int, kmax: int, *, max_bytes: int = DEFAULT_MAX_BYTES) -> ScaleReport:
    """pi(n 2^k) / (n 2^k)^2 for k = 0..kmax, exact, from one solve at n 2^kmax."""
    if n < 1 or kmax < 0:
        raise DomainError("need n >= 1 and kmax >= 0")
    t = solve(n << kmax, f, max_bytes=max_bytes)
    return zeta_from_table(t, n, kmax)


def h_series(t: PairTable, n: int, kmax: int) -> ScaleReport:
    """h(n 2^k, n 2^k) / 4^k for k = 0..kmax."""
    if n <= t.f.threshold:
        raise DomainError(f"n={n} must exceed {t.f.threshold}")
    vals = []
    for k in range(kmax + 1):
        m = n << k
        vals.append(Fraction(h_value(t, m, m, 2 * (m - 1)), 4 ** k))
    return ScaleReport(n, tuple(vals), "h-based", t.f.size)


def identity_sides(m: int, counts: PiCounts, h: int) -> tuple[int, int]:
    """Both sides of 6 pi(m) = m^2 - m - 2 h(m, m) + 4 pi2(m) + 6 pi1(m)."""
    return 6 * counts.pi, m * m - m - 2 * h + 4 * counts.pi2 + 6 * counts.pi1


@dataclass(frozen=True)
class IdentityReport:
    m: int
    counts: PiCounts
    h: int
    lhs: int
    rhs: int

    @property
    def difference(self) -> int:
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def identity_check(t: PairTable, m: int, xmax: int | None = None, *, h: int | None = None) -> IdentityReport:
    """Evaluate the P-position counting identity at m; ``h`` may be overridden for fault injection."""
    if m >= t.n:
        raise RangeError(f"identity at m={m} needs a table with n > {m}")
    xmax = 2 * (m - 1) if xmax is None else xmax
    counts = pi_counts(t, m)
    if h is None:
        h = h_value(t, m, m, xmax)
    lhs, rhs = identity_sides(m, counts, h)
    return IdentityReport(m, counts, h, lhs, rhs)


def parse_box(spec: str | Sequence) -> tuple:
    parts = spec.split(",") if isinstance(spec, str) else list(spec)
    if len(parts) != 6:
        raise DomainError(f"box needs 6 bounds x0,x1,y0,y1,z0,z1, got {len(parts)}")
    try:
        return tuple(Fraction(str(p).strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad box bound: {exc}") from None


def region_count(t: PairTable, box, k: int) -> int:
    """P multisets (a >= b >= c) with a, b, c / 2^k inside the half-open box."""
    x0, x1, y0, y1, z0, z1 = parse_box(box)
    s = 1 << k
    lo = [math.ceil(v * s) for v in (x0, y0, z0)]
    hi = [math.ceil(v * s) for v in (x1, y1, z1)]
    if hi[1] > t.n or hi[2] > t.n:
        raise RangeError(f"scaled box needs middle/smallest heaps up to {max(hi[1:])}, table has n={t.n}")
    xs, ys = t.pair_coords()
    a = t.third.astype(np.int64)
    keep = (a >= xs) & (a >= lo[0]) & (a < hi[0])
    keep &= (xs >= lo[1]) & (xs < hi[1]) & (ys >= lo[2]) & (ys < hi[2])
    return int(np.count_nonzero(keep))


def region_series(t: PairTable, box, kmax: int) -> list[Fraction]:
    return [Fraction(region_count(t, box, k), 4 ** k) for k in range(kmax + 1)]
