"""Fast computation of the unique third heap for every unordered heap pair.

Pairs (x, y), y <= x, are processed in ascending (x, y) order. Each value v
owns an occupancy bit-array holding every third already assigned to a pair
containing v; the third of (x, y) is the least value clear in both arrays
that does not complete a forbidden triple. Thirds are stored in a flat
lower-triangular ``uint32`` array indexed by ``x*(x+1)//2 + y``.
"""

from __future__ import annotations

import hashlib
import io
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, NamedTuple

import numpy as np

from .errors import DomainError, FormatError, RangeError, ResourceError
from .oracle import Status
from .rules import EMPTY, ForbiddenSet, Position

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

DEFAULT_MAX_BYTES = 1 << 30
MAGIC = b"CISNIM1\n"
VERSION = 1


def tri(x, y):
    """Flat index of the unordered pair (x, y) with y <= x."""
    return x * (x + 1) // 2 + y


@dataclass(frozen=True, eq=False)
class PairTable:
    n: int
    f: ForbiddenSet
    third: np.ndarray = field(repr=False)
    _square: list = field(default_factory=list, repr=False, compare=False)

    @property
    def zbound(self) -> int:
        return 2 * (self.n - 1) + self.f.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairTable):
            return NotImplemented
        return (
            self.n == other.n
            and self.f == other.f
            and np.array_equal(self.third, other.third)
        )

    def __hash__(self):
        return hash((self.n, self.f, hashlib.sha1(self.third.tobytes()).hexdigest()))

    def __call__(self, x: int, y: int) -> int:
        return third_of(self, x, y)

    def row(self, x: int) -> np.ndarray:
        """Thirds of the pairs (x, 0), ..., (x, x)."""
        if not 0 <= x < self.n:
            raise RangeError(f"row {x} outside table of size {self.n}; re-solve with larger n")
        s = tri(x, 0)
        return self.third[s : s + x + 1]

    def square(self) -> np.ndarray:
        """Dense symmetric (n, n) view; built once and cached."""
        if not self._square:
            n = self.n
            sq = np.empty((n, n), dtype=np.uint32)
            for x in range(n):
                r = self.row(x)
                sq[x, : x + 1] = r
                sq[: x + 1, x] = r
            sq.setflags(write=False)
            self._square.append(sq)
        return self._square[0]

    def pair_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (xs, ys) aligned with ``third``."""
        xs = np.repeat(np.arange(self.n, dtype=np.int64), np.arange(1, self.n + 1))
        ys = np.arange(len(self.third), dtype=np.int64) - xs * (xs + 1) // 2
        return xs, ys


def estimate_bytes(n: int, fsize: int = 0) -> int:
    words = (2 * (n - 1) + fsize + 1 + 63) // 64
    return 4 * tri(n, 0) + 8 * n * words


def _forbidden_csr(n: int, f: ForbiddenSet) -> tuple[np.ndarray, np.ndarray]:
    """Per-pair lists of forbidden thirds, for pairs with both coordinates <= fmax."""
    by_pair: dict[int, set[int]] = {}
    for a, b, c in f.members:
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            if x < n:
                by_pair.setdefault(tri(x, y), set()).add(z)
    limit = tri(min(n, f.fmax + 1), 0) if f.size else 0
    off = np.zeros(limit + 1, dtype=np.int64)
    zs = []
    for p in range(limit):
        got = sorted(by_pair.get(p, ()))
        zs.extend(got)
        off[p + 1] = off[p] + len(got)
    return off, np.asarray(zs, dtype=np.int64)


def _sieve_kernel(n, zcap, words, f_off, f_z, third):
    occ = np.zeros((n, words), dtype=np.uint64)
    nf = f_off.shape[0] - 1
    one = np.uint64(1)
    idx = 0
    for x in range(n):
        for y in range(x + 1):
            lo = 0
            hi = 0
            if idx < nf:
                lo = f_off[idx]
                hi = f_off[idx + 1]
            z = -1
            for w in range(words):
                free = ~(occ[x, w] | occ[y, w])
                bit = 0
                while free != 0 and bit < 64:
                    if (free >> np.uint64(bit)) & one:
                        cand = w * 64 + bit
                        skip = False
                        for k in range(lo, hi):
                            if f_z[k] == cand:
                                skip = True
                        if not skip:
                            z = cand
                            break
                    bit += 1
                if z >= 0:
                    break
            if z < 0 or z >= zcap:
                return idx
            third[idx] = z
            mask = one << np.uint64(z & 63)
            occ[x, z >> 6] |= mask
            occ[y, z >> 6] |= mask
            idx += 1
    return -1


_sieve_fast = njit(cache=True, nogil=True)(_sieve_kernel) if njit is not None else None


def _sieve_bigint(n, zcap, f_off, f_z, third):
    """Same sieve with Python integers as bit-arrays; used without numba and as a cross-check."""
    occ = [0] * n
    nf = len(f_off) - 1
    idx = 0
    for x in range(n):
        for y in range(x + 1):
            blocked = occ[x] | occ[y]
            skip = set(f_z[f_off[idx] : f_off[idx + 1]].tolist()) if idx < nf else ()
            while True:
                z = (~blocked & (blocked + 1)).bit_length() - 1
                if z not in skip:
                    break
                blocked |= 1 << z
            if z >= zcap:
                return idx
            third[idx] = z
            occ[x] |= 1 << z
            occ[y] |= 1 << z
            idx += 1
    return -1


def solve(n: int, f: ForbiddenSet = EMPTY, *, max_bytes: int = DEFAULT_MAX_BYTES,
          backend: str = "auto") -> PairTable:
    """Solve Nim minus ``f`` for every unordered pair with both coordinates < n."""
    if n < 1:
        raise DomainError(f"pair bound must be >= 1, got {n}")
    need = estimate_bytes(n, f.size)
    if need > max_bytes:
        raise ResourceError(f"solve({n}) needs ~{need} bytes, ceiling is {max_bytes}")
    zcap = 2 * (n - 1) + f.size + 1
    words = (zcap + 63) // 64
    f_off, f_z = _forbidden_csr(n, f)
    third = np.zeros(tri(n, 0), dtype=np.uint32)
    if backend == "auto":
        backend = "numba" if _sieve_fast is not None else "python"
    if backend == "numba":
        if _sieve_fast is None:
            raise DomainError("numba backend requested but numba is not installed")
        bad = _sieve_fast(n, zcap, words, f_off, f_z, third)
    elif backend == "python":
        bad = _sieve_bigint(n, zcap, f_off, f_z, third)
    else:
        raise DomainError(f"unknown backend {backend!r}")
    if bad >= 0:
        raise AssertionError(f"third of pair #{bad} exceeds the bit-array capacity {zcap}")
    third.setflags(write=False)
    return PairTable(n, f, third)


def third_of(t: PairTable, x: int, y: int) -> int:
    if x < y:
        x, y = y, x
    if y < 0:
        raise DomainError(f"negative heap size in pair ({x}, {y})")
    if x >= t.n:
        raise RangeError(f"pair ({x}, {y}) outside table of size {t.n}; re-solve with larger n")
    return int(t.third[tri(x, y)])


def classify(t: PairTable, p) -> Status:
    a, b, c = Position(*p)
    if b >= t.n:
        raise RangeError(f"position {(a, b, c)} needs a table with n > {b}")
    if (a, b, c) in t.f.members:
        return Status.FORBIDDEN
    return Status.P if third_of(t, b, c) == a else Status.N


class PiCounts(NamedTuple):
    pi: int
    pi1: int
    pi2: int
    pi3: int


def _p_multisets(t: PairTable):
    """(largest, middle, smallest) arrays, one entry per P multiset with middle < n."""
    xs, ys = t.pair_coords()
    z = t.third.astype(np.int64)
    keep = z >= xs
    return z[keep], xs[keep], ys[keep]


def pi_counts(t: PairTable, m: int) -> PiCounts:
    """P multisets with every heap < m, split by how many heaps coincide."""
    if m > t.n:
        raise RangeError(f"pi_counts({m}) needs a table with n >= {m}")
    if m < 0:
        raise DomainError("m must be non-negative")
    a, b, c = _p_multisets(t)
    keep = a < m
    a, b, c = a[keep], b[keep], c[keep]
    pi1 = int(np.count_nonzero((a == b) & (b == c)))
    pi3 = int(np.count_nonzero((a > b) & (b > c)))
    pi = int(a.size)
    return PiCounts(pi, pi1, pi - pi1 - pi3, pi3)


def pi_curve(t: PairTable, mmax: int | None = None) -> np.ndarray:
    """``out[m]`` = pi(m) for 0 <= m <= mmax, from a single histogram pass."""
    mmax = t.n if mmax is None else mmax
    if mmax > t.n:
        raise RangeError(f"pi_curve({mmax}) needs a table with n >= {mmax}")
    a, _, _ = _p_multisets(t)
    a = a[a < mmax]
    hist = np.bincount(a, minlength=mmax)
    out = np.zeros(mmax + 1, dtype=np.int64)
    np.cumsum(hist, out=out[1:])
    return out


# ---------------------------------------------------------------------------
# Cache file
# ---------------------------------------------------------------------------

def _checksum(data: bytes) -> int:
    return int(np.frombuffer(data, dtype=np.uint8).sum(dtype=np.uint64))


def dump_table(t: PairTable) -> bytes:
    parts = [MAGIC, struct.pack("<III", VERSION, t.n, t.f.size)]
    for p in t.f.sorted():
        parts.append(struct.pack("<III", *p))
    parts.append(np.ascontiguousarray(t.third, dtype="<u4").tobytes())
    body = b"".join(parts)
    return body + struct.pack("<Q", _checksum(body))


def save_table(t: PairTable, sink: BinaryIO | str) -> None:
    data = dump_table(t)
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "wb") as fh:
            fh.write(data)
    else:
        sink.write(data)


def parse_table(data: bytes) -> PairTable:
    head = len(MAGIC) + 12
    if len(data) < head + 8:
        raise FormatError("truncated cache stream")
    if data[: len(MAGIC)] != MAGIC:
        raise FormatError("bad magic; not a pair-table cache")
    version, n, fsize = struct.unpack_from("<III", data, len(MAGIC))
    if version != VERSION:
        raise FormatError(f"unsupported cache version {version}")
    expect = head + 12 * fsize + 4 * tri(n, 0) + 8
    if len(data) != expect:
        raise FormatError(f"cache stream is {len(data)} bytes, header implies {expect}")
    (stored,) = struct.unpack_from("<Q", data, len(data) - 8)
    if stored != _checksum(data[:-8]):
        raise FormatError("checksum mismatch")
    if n < 1:
        raise FormatError("table size must be >= 1")
    members = [struct.unpack_from("<III", data, head + 12 * i) for i in range(fsize)]
    f = ForbiddenSet.of(members)
    if f.size != fsize:
        raise FormatError("duplicate forbidden entries in cache")
    off = head + 12 * fsize
    third = np.frombuffer(data, dtype="<u4", count=tri(n, 0), offset=off).astype(np.uint32)
    third.setflags(write=False)
    return PairTable(n, f, third)


def load_table(source: BinaryIO | str) -> PairTable:
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "rb") as fh:
            return parse_table(fh.read())
    return parse_table(source.read())


def roundtrip(t: PairTable) -> PairTable:
    buf = io.BytesIO()
    save_table(t, buf)
    buf.seek(0)
    return load_table(buf)
