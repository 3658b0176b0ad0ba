"""Byte-deterministic writers for figures and series."""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import BinaryIO, TextIO

import numpy as np

from .analysis.scaling import ScaleReport
from .engine import DEFAULT_MAX_BYTES, PairTable, pi_curve, solve
from .errors import DomainError, RangeError
from .rules import ForbiddenSet

_CTX = decimal.Context(prec=20, rounding=decimal.ROUND_HALF_EVEN)
_ROWS_PER_CHUNK = 256


def decimal_str(q: Fraction) -> str:
    """Exact rational rendered with 20 significant digits, always with a decimal point."""
    d = _CTX.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))
    s = format(d, "f")
    return s if "." in s else s + ".0"


@dataclass(frozen=True)
class FigureGrid:
    n: int
    values: np.ndarray  # values[x, y]
    zmax: int


def figure_grid(t: PairTable, n: int) -> FigureGrid:
    if n > t.n or n < 1:
        raise RangeError(f"figure of side {n} needs a table with n >= {n}")
    vals = t.square()[:n, :n]
    return FigureGrid(n, vals, int(vals.max()))


def emit_figure(t: PairTable, n: int, fmt: str, sink: BinaryIO) -> None:
    """Grayscale PGM (origin bottom-left) or ``x,y,z`` CSV of the third-heap grid."""
    grid = figure_grid(t, n)
    if fmt == "pgm":
        norm = max(grid.zmax, 1)
        sink.write(b"P5\n%d %d\n255\n" % (n, n))
        for top in range(0, n, _ROWS_PER_CHUNK):
            rows = np.arange(top, min(n, top + _ROWS_PER_CHUNK))
            ys = n - 1 - rows
            block = grid.values[:, ys].T.astype(np.uint64)
            sink.write(((block * 255) // norm).astype(np.uint8).tobytes())
    elif fmt == "csv":
        sink.write(b"x,y,z\n")
        ys = np.arange(n)
        for x in range(n):
            col = grid.values[x]
            lines = "".join(f"{x},{y},{z}\n" for y, z in zip(ys.tolist(), col.tolist()))
            sink.write(lines.encode("ascii"))
    else:
        raise DomainError(f"unknown figure format {fmt!r}")


def emit_pi_curve(f: ForbiddenSet, xmax: int, sink: TextIO, *, max_bytes: int = DEFAULT_MAX_BYTES,
                  table: PairTable | None = None) -> None:
    sink.write("x,pi,ratio\n")
    if xmax < 1:
        return
    t = table if table is not None and table.n >= xmax and table.f == f else solve(xmax, f, max_bytes=max_bytes)
    curve = pi_curve(t, xmax)
    for x in range(1, xmax + 1):
        pi = int(curve[x])
        sink.write(f"{x},{pi},{decimal_str(Fraction(pi, x * x))}\n")


def emit_series(report: ScaleReport, sink: TextIO) -> None:
    sink.write("k,zeta_num,zeta_den,zeta_decimal,delta\n")
    prev = None
    for k, z in enumerate(report.values):
        delta = "" if prev is None else decimal_str(abs(z - prev))
        sink.write(f"{k},{z.numerator},{z.denominator},{decimal_str(z)},{delta}\n")
        prev = z
