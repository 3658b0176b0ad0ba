"""Independent reference computations used to derive frozen expectations.

Nothing here touches the engine: values come from Bouton's XOR rule,
exhaustive backward induction, or closed forms substituted by hand.
"""

from fractions import Fraction
from functools import lru_cache

from cisnim.oracle import Status, solve_box


def xor_third(x, y):
    return x ^ y


@lru_cache(maxsize=None)
def box(bound, f):
    return solve_box(bound, f)


def brute_third(f, x, y, bound=None):
    """The z making {x, y, z} P, found by scanning a backward-induction box."""
    bound = bound or 2 * max(x, y) + f.size + 2
    sol = box(bound, f)
    hits = [z for z in range(bound) if sol[(x, y, z)] is Status.P]
    assert len(hits) == 1, (x, y, hits)
    return hits[0]


def brute_p_multisets(f, bound):
    return set(box(bound, f).p_positions())


def brute_in_s(f, x, y):
    return x > y and any(brute_third(f, x, y) == z for z in range(y))


def brute_r(f, x, y):
    """Elements (x', y) of S with x' >= x, by direct enumeration of x'."""
    top = 2 * y + f.size
    bound = top + y + f.size + 2
    return sum(
        1 for xp in range(max(x, y + 1), top + 1)
        if brute_third(f, xp, y, bound=bound) < y
    )


def brute_b(f, x, y):
    return sum(1 for yp in range(min(y, x - 1) + 1) if brute_third(f, x, yp) < yp)


def nim_zeta_base1(k):
    # closed form with x = 2^k, largest power of two y = 2^k
    return Fraction(4 ** k + 3 * 2 ** k + 2, 6 * 4 ** k)


def nim_pi_bruteforce(m):
    return sum(
        1 for a in range(m) for b in range(a + 1) for c in range(b + 1) if a ^ b ^ c == 0
    )
