"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
3 a resource ceiling was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import analysis as an
from .engine import DEFAULT_MAX_BYTES, PairTable, classify, load_table, pi_counts, save_table, solve
from .errors import CisNimError, ResourceError
from .oracle import solve_box
from .output import emit_figure, emit_pi_curve, emit_series
from .rules import EMPTY, ForbiddenSet, Position, misere_forbidden, read_forbidden

log = logging.getLogger("cisnim")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _game_flags(p: argparse.ArgumentParser, *, n_help: str = "pair bound of the solved table") -> None:
    p.add_argument("--n", type=int, help=n_help)
    p.add_argument("--forbidden", metavar="PATH", help="forbidden-position file")
    p.add_argument("--misere", action="store_true", help="also forbid (0,0,0)")
    p.add_argument("--cache", metavar="PATH", help="pair-table cache file")
    p.add_argument("--memory", type=int, default=DEFAULT_MAX_BYTES >> 20, metavar="MB",
                   help="memory ceiling for a solve (default %(default)s MB)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cisnim", description="P-positions of three-heap Nim with forbidden positions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve a game and write the pair-table cache")
    _game_flags(p)

    p = sub.add_parser("classify", help="print P, N or Forbidden for a position")
    _game_flags(p)
    p.add_argument("heaps", nargs=3, type=int)

    p = sub.add_parser("figure", help="emit the third-heap grid as PGM or CSV")
    _game_flags(p, n_help="grid side length")
    p.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("pi-series", help="CSV of pi(n 2^k) / (n 2^k)^2")
    _game_flags(p)
    p.add_argument("--base", type=int, default=1)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--kind", choices=("pi", "h"), default="pi")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("pi-curve", help="CSV of pi(x) and pi(x)/x^2")
    _game_flags(p)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("verify", help="run a verification suite")
    _game_flags(p)
    p.add_argument("--suite", choices=("oracle", "thm5", "lemma6", "identity"), required=True)
    p.add_argument("--max", type=int, help="oracle box bound, or the single m for the identity suite")
    p.add_argument("--truncate", type=int, help="first-coordinate bound for point-set constructions")

    p = sub.add_parser("analyze", help="JSON summary of S-derived quantities")
    _game_flags(p)
    p.add_argument("--max", type=int, help="scan bound for well-behavedness")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("periodicity", help="probe additive periodicity of one row")
    _game_flags(p)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--ymax", type=int)

    p = sub.add_parser("region-count", help="count P-positions in a scaled rational box")
    _game_flags(p)
    p.add_argument("--box", required=True, help="x0,x1,y0,y1,z0,z1 (rationals as a/b)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--kmax", type=int, help="emit the series k = 0..kmax instead")
    parser.commands = sub.choices
    return parser


def _forbidden(args) -> ForbiddenSet:
    f = read_forbidden(args.forbidden) if args.forbidden else EMPTY
    if args.misere:
        f = f | misere_forbidden()
    return f


def _max_bytes(args) -> int:
    return args.memory << 20


def _table(args, need: int | None = None) -> PairTable:
    """Load the cache when it exists and fits, otherwise solve."""
    f = _forbidden(args)
    n = args.n if args.n is not None else need
    if args.cache and os.path.exists(args.cache):
        t = load_table(args.cache)
        if (args.forbidden or args.misere) and t.f != f:
            raise CisNimError(f"cache {args.cache} holds a different forbidden set")
        if n is None or t.n >= n:
            return t
        log.info("cache covers n=%d < %d, re-solving", t.n, n)
    if n is None:
        raise _UsageError("--n is required when no cache is available")
    return solve(n, f, max_bytes=_max_bytes(args))


@contextmanager
def _sink(path, binary=False):
    if path is None:
        yield sys.stdout.buffer if binary else sys.stdout
        return
    with open(path, "wb" if binary else "w", newline="" if not binary else None) as fh:
        yield fh


def _report(results) -> int:
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name} checked={r.checked} violations={r.count}")
        for ex in r.examples[:5]:
            print(f"    {ex}")
        failed += not r.ok
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_solve(args) -> int:
    if args.n is None:
        raise _UsageError("solve needs --n")
    t = solve(args.n, _forbidden(args), max_bytes=_max_bytes(args))
    if args.cache:
        save_table(t, args.cache)
    print(f"n={t.n} |F|={t.f.size} fmax={t.f.fmax} zbound={t.zbound} max_third={int(t.third.max())}")
    return EXIT_OK


def cmd_classify(args) -> int:
    p = Position(*args.heaps)
    t = _table(args, need=p.b + 1)
    print(classify(t, p))
    return EXIT_OK


def cmd_figure(args) -> int:
    t = _table(args)
    n = args.n if args.n is not None else t.n
    with _sink(args.out, binary=True) as fh:
        emit_figure(t, n, args.format, fh)
    return EXIT_OK


def cmd_pi_series(args) -> int:
    need = args.base << args.kmax
    if args.kind == "pi":
        t = _table(args, need=need)
        report = an.zeta_from_table(t, args.base, args.kmax)
    else:
        t = _table(args, need=need + 1)
        report = an.h_series(t, args.base, args.kmax)
    with _sink(args.out) as fh:
        emit_series(report, fh)
    return EXIT_OK


def cmd_pi_curve(args) -> int:
    t = _table(args, need=max(args.max, 1))
    with _sink(args.out) as fh:
        emit_pi_curve(t.f, args.max, fh, table=t, max_bytes=_max_bytes(args))
    return EXIT_OK


class _Check:
    def __init__(self, name, ok, checked=1, examples=()):
        self.name, self.ok, self.checked = name, ok, checked
        self.count = 0 if ok else max(1, len(examples))
        self.examples = list(examples)


def _oracle_suite(args) -> list:
    bound = args.max or 24
    f = _forbidden(args)
    sol = solve_box(bound, f)
    t = solve(bound, f, max_bytes=_max_bytes(args))
    bad = [p for p, s in sol.status.items() if classify(t, p) is not s]
    res = an.SuiteResult(f"engine agrees with backward induction below {bound}", checked=len(sol.status))
    for p in bad:
        res.fail((tuple(p), str(sol.status[p]), str(classify(t, p))))
    return [res]


def _lemma_suite(args, t: PairTable) -> list:
    out = an.check_row_lemmas(t)
    T = t.f.threshold
    phi = an.SuiteResult("U_{x,y} -> U_{x,y+1} single-swap rule")
    disp = an.SuiteResult("swaps do not increase x-y or x-2y")
    for x in range(T + 1, min(t.n - 1, T + 58)):
        for y in range(x):
            rep = an.phi_step_check(t, x, y)
            phi.checked += 1
            if not rep.ok:
                phi.fail((x, y) + rep.discrepancies)
            if not rep.identity:
                disp.checked += 1
                if not rep.displacement_ok:
                    disp.fail((x, y, sorted(rep.removed), sorted(rep.added)))
    out += [phi, disp]
    n0 = T + 2
    halve = an.SuiteResult(f"halving map is 4-to-1 on R slices of S_{n0}")
    if n0 < t.n:
        xmax = args.truncate or (n0 << 4)
        for k in (1, 2, 3):
            if xmax >= n0 << (k + 1):
                rep = an.halve_check(t, n0, k, xmax)
                halve.checked += 1
                if not rep.ok:
                    halve.fail((k,) + rep.offending[:3])
    out.append(halve)
    return out


def _identity_suite(args, t: PairTable) -> list:
    T = t.f.threshold
    if args.max:
        ms = [args.max]
    else:
        ms = [m for m in (16, 64, 256, 1024) if T < m < t.n]
    out = []
    for m in ms:
        rep = an.identity_check(t, m, args.truncate)
        out.append(_Check(f"6 pi(m) = m^2 - m - 2h + 4 pi2 + 6 pi1 at m={m}", rep.ok,
                          examples=[] if rep.ok else [(rep.lhs, rep.rhs)]))
    return out


def cmd_verify(args) -> int:
    if args.suite == "oracle":
        return _report(_oracle_suite(args))
    need = {"thm5": 200, "lemma6": 200, "identity": 257}[args.suite]
    t = _table(args, need=need)
    if args.suite == "thm5":
        return _report(an.check_table_theorems(t))
    if args.suite == "lemma6":
        return _report(_lemma_suite(args, t))
    return _report(_identity_suite(args, t))


def cmd_analyze(args) -> int:
    t = _table(args, need=256)
    bound = min(args.max or t.n, t.n)
    wb = an.well_behaved_scan(t, bound)
    T = t.f.threshold
    holes = sum(an.is_hole(t, x, y) for x in range(T + 1, bound) for y in range(x))
    counts = pi_counts(t, t.n)
    doc = {
        "n": t.n,
        "forbidden": [list(p) for p in t.f.sorted()],
        "fmax": t.f.fmax,
        "threshold": T,
        "pi": counts._asdict(),
        "holes_above_threshold": int(holes),
        "well_behaved": {
            "scanned_bound": wb.scanned_bound,
            "verdict": wb.verdict,
            "violations": list(wb.violations),
            "c1_candidate": wb.c1_candidate,
            "dyadic_base": wb.dyadic_base,
        },
    }
    with _sink(args.out) as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_periodicity(args) -> int:
    t = _table(args, need=max(args.row + 1, 256))
    ymax = args.ymax or t.n
    got = an.row_periodicity_probe(t, args.row, ymax)
    print("none" if got is None else f"p={got[0]} q={got[1]}")
    return EXIT_OK


def cmd_region_count(args) -> int:
    t = _table(args)
    if args.kmax is None:
        print(an.region_count(t, args.box, args.k))
        return EXIT_OK
    print("k,count,ratio")
    for k, ratio in enumerate(an.region_series(t, args.box, args.kmax)):
        print(f"{k},{an.region_count(t, args.box, k)},{ratio}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "classify": cmd_classify,
    "figure": cmd_figure,
    "pi-series": cmd_pi_series,
    "pi-curve": cmd_pi_curve,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "periodicity": cmd_periodicity,
    "region-count": cmd_region_count,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        if extra:
            parser.commands[args.command].error(f"unrecognized arguments: {' '.join(extra)}")
    except _UsageError as exc:
        print(f"cisnim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"cisnim: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except _UsageError as exc:
        parser.print_help(sys.stderr)
        print(f"cisnim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CisNimError, OSError) as exc:
        print(f"cisnim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
