"""Command-line front end.

All spins are given as twice-integers (spin 1/2 -> 1, spin 30 -> 60), so
half-integer inputs never need fraction parsing.  Exit codes: 0 ok,
2 invalid input, 3 strict-mode geometric rejection, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from .asymptotics import (
    SmallSpinMarking,
    asym_3nj,
    asym_9j_one_small,
    asym_15j_four_small,
    asym_15j_one_small,
    asym_15j_three_small,
    asym_15j_two_small,
    edmonds_6j,
    pr_6j,
)
from .errors import ConfigError, NotClassicallyAllowed, WignerAsymError
from .exact import (
    DEFAULT_DPS,
    PIVOTS,
    Symbol3nj,
    Symbol9j,
    wigner6j,
    wigner9j,
    wigner15j,
    wigner3nj,
)
from .halfint import HalfInt
from .harness import SweepConfig, fig4_suite, run_sweep, write_outputs

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_ALLOWED = 3
EXIT_VERIFY_FAILED = 4


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NotClassicallyAllowed as exc:
        print(f"not classically allowed: {exc}", file=sys.stderr)
        if getattr(args, "strict_allowed", False):
            return EXIT_NOT_ALLOWED
        print("nan")
        return EXIT_OK
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except WignerAsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wigner-asym",
        description="Exact Wigner 3nj symbols and their semiclassical asymptotics "
                    "(all spins as twice-integers).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", help="exact symbol values")
    p_exact.add_argument("symbol", choices=("6j", "9j", "15j", "3nj"))
    p_exact.add_argument("spins", nargs="+", type=int, help="twice-integer spins")
    p_exact.add_argument("--pivot", choices=PIVOTS + ("j34",), default="j24")
    p_exact.add_argument("--precision", type=int, default=DEFAULT_DPS)
    p_exact.add_argument("--n", type=int, default=None, help="chain length for 3nj")
    p_exact.add_argument("--diagnostics", action="store_true")
    p_exact.set_defaults(handler=cmd_exact)

    p_asym = sub.add_parser("asym", help="asymptotic formulas")
    p_asym.add_argument(
        "formula",
        choices=("pr6j", "edmonds", "9j", "3nj", "15j-1", "15j-2", "15j-3", "15j-4"),
    )
    p_asym.add_argument("spins", nargs="+", type=int, help="twice-integer spins")
    p_asym.add_argument("--small-jk", default="j:1",
                        help="row:index of the small j/k spin (3nj), e.g. j:1")
    p_asym.add_argument("--small-l", default="",
                        help="comma-separated small l indices (3nj), e.g. 2,3")
    p_asym.add_argument("--n", type=int, default=None, help="chain length for 3nj")
    p_asym.add_argument("--edmonds-lengths", choices=("half", "sqrt"), default="half")
    p_asym.add_argument("--caustic-eps", type=float, default=1e-6)
    p_asym.add_argument("--strict-allowed", action="store_true")
    p_asym.add_argument("--diagnostics", action="store_true")
    p_asym.set_defaults(handler=cmd_asym)

    p_sweep = sub.add_parser("sweep", help="run a configured sweep")
    p_sweep.add_argument("--config", required=True, help="JSON config path")
    p_sweep.add_argument("--out", default=None, help="override output CSV path")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_verify = sub.add_parser("verify", help="verification suites")
    p_verify.add_argument("suite", choices=("fig4", "identities"))
    p_verify.add_argument("--out", default=None, help="output directory for fig4 CSVs")
    p_verify.add_argument("--precision", type=int, default=DEFAULT_DPS)
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def _half(t: int) -> HalfInt:
    return HalfInt.from_twice(t)


def cmd_exact(args) -> int:
    spins = args.spins
    if args.symbol == "6j":
        _need(spins, 6)
        value = wigner6j(*(_half(t) for t in spins))
        with mpmath.workdps(args.precision):
            print(f"{mpmath.nstr(value.to_mpf(), args.precision)}    [{value}]")
        return EXIT_OK
    if args.symbol == "9j":
        _need(spins, 9)
        sym = Symbol9j.from_twice(*spins)
        res = wigner9j(sym, pivot=args.pivot, dps=args.precision)
        with mpmath.workdps(args.precision):
            print(mpmath.nstr(res.value, args.precision))
            if args.diagnostics:
                for x, term in res.terms:
                    print(f"  x={x}: {mpmath.nstr(term, 12)}")
        return EXIT_OK
    n = args.n or (5 if args.symbol == "15j" else len(spins) // 3)
    if args.symbol == "15j":
        n = 5
    _need(spins, 3 * n)
    sym = Symbol3nj(
        tuple(_half(t) for t in spins[:n]),
        tuple(_half(t) for t in spins[n:2 * n]),
        tuple(_half(t) for t in spins[2 * n:]),
    )
    if args.symbol == "15j":
        value = wigner15j(sym.j, sym.k, sym.l, dps=args.precision)
    else:
        value = wigner3nj(sym, dps=args.precision)
    with mpmath.workdps(args.precision):
        print(mpmath.nstr(value, args.precision))
    return EXIT_OK


def cmd_asym(args) -> int:
    spins = args.spins
    if args.formula == "pr6j":
        _need(spins, 6)
        value, diag = pr_6j([_half(t) for t in spins], args.caustic_eps)
        return _print_asym(args, value, diag)
    if args.formula == "edmonds":
        _need(spins, 6, "a b c m n f (twice-values; m, n projections of f)")
        a, b, c, m, n, f = spins
        value = edmonds_6j(_half(a), _half(b), _half(c), _half(m), _half(n), _half(f),
                           lengths=args.edmonds_lengths)
        print(f"{value:.17g}")
        return EXIT_OK
    if args.formula == "9j":
        _need(spins, 9)
        sym = Symbol9j.from_twice(*spins)
        value, diag = asym_9j_one_small(sym, args.caustic_eps)
        return _print_asym(args, value, diag)
    n = args.n or (5 if args.formula.startswith("15j") else len(spins) // 3)
    if args.formula.startswith("15j"):
        n = 5
    _need(spins, 3 * n)
    sym = Symbol3nj(
        tuple(_half(t) for t in spins[:n]),
        tuple(_half(t) for t in spins[n:2 * n]),
        tuple(_half(t) for t in spins[2 * n:]),
    )
    marking = _parse_marking(args)
    if args.formula == "3nj":
        value, diag = asym_3nj(sym, marking, args.caustic_eps)
    else:
        func = {
            "15j-1": asym_15j_one_small,
            "15j-2": asym_15j_two_small,
            "15j-3": asym_15j_three_small,
            "15j-4": asym_15j_four_small,
        }[args.formula]
        expected = {"15j-1": frozenset(), "15j-2": frozenset({2}),
                    "15j-3": frozenset({2, 3}), "15j-4": frozenset({2, 3, 4})}
        if marking.small_l != expected[args.formula] and not args.small_l:
            marking = SmallSpinMarking(marking.small_jk, expected[args.formula])
        value, diag = func(sym, marking, args.caustic_eps)
    return _print_asym(args, value, diag)


def _parse_marking(args) -> SmallSpinMarking:
    row, _, idx = args.small_jk.partition(":")
    small_l = frozenset(int(s) for s in args.small_l.split(",") if s.strip())
    return SmallSpinMarking((row, int(idx or 1)), small_l)


def _print_asym(args, value: float, diag) -> int:
    if getattr(args, "strict_allowed", False) and any(
        fl.startswith("near_caustic") or fl == "invalid_symbol" for fl in diag.flags
    ):
        print(f"{value:.17g}", file=sys.stderr)
        return EXIT_NOT_ALLOWED
    print(f"{value:.17g}")
    if args.diagnostics:
        dump = {
            "volumes": diag.volumes,
            "regge_actions": diag.regge_actions,
            "angles": diag.angles,
            "flags": diag.flags,
            "warnings": diag.warnings,
            "sign_configs": diag.sign_configs,
        }
        print(json.dumps(dump, indent=2, default=str))
    return EXIT_OK


def _need(spins, count: int, what: str = "") -> None:
    if len(spins) != count:
        raise ValueError(
            f"expected {count} twice-integer spins{' (' + what + ')' if what else ''}, "
            f"got {len(spins)}"
        )


def cmd_sweep(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = SweepConfig.from_json(fh.read())
    result = run_sweep(cfg)
    out = args.out or cfg.out
    if out:
        write_outputs(result, out)
        print(f"wrote {out}")
    else:
        sys.stdout.write(result.csv_text())
    print(json.dumps(result.summary, indent=2, default=str), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "fig4":
        reports, _ = fig4_suite(outdir=args.out, precision=args.precision)
        ok = True
        for r in reports:
            for name, passed in r.checks.items():
                print(f"panel {r.name}: {name}: {'PASS' if passed else 'FAIL'}")
            ok = ok and r.passed
        return EXIT_OK if ok else EXIT_VERIFY_FAILED
    return _verify_identities(args)


def _verify_identities(args) -> int:
    """Fast algebraic spot checks of the exact engine."""
    import random

    from .identities import (
        orthogonality_defect,
        pentagon_max_residual,
        random_orthogonality_instance,
        random_valid_9j,
    )

    rng = random.Random(20240817)
    ok = True

    def report(name, passed):
        nonlocal ok
        ok = ok and passed
        print(f"{name}: {'PASS' if passed else 'FAIL'}")

    with mpmath.workdps(50):
        tol = mpmath.mpf(10) ** -30
        worst = pentagon_max_residual(rng, 25, tmax=16)
        report(f"pentagon identity (worst rel {mpmath.nstr(worst, 3)})", worst < tol)

        defects = 0
        for _ in range(25):
            inst = random_orthogonality_instance(rng, tmax=14)
            if inst is None:
                continue
            if orthogonality_defect(*inst):
                defects += 1
        report("6j orthogonality (exact)", defects == 0)

        sym = random_valid_9j(rng, tmax=20)
        vals = [wigner9j(sym, pivot=p).value for p in PIVOTS]
        spread = max(abs(v - vals[0]) for v in vals[1:])
        report("9j pivot invariance", spread < tol * max(abs(vals[0]), mpmath.mpf(1) / 10**6))

        rows = (tuple(HalfInt(x) for x in (1, 2, 2, 1, 1)),
                tuple(HalfInt(x) for x in (2, 1, 1, 2, 2)),
                tuple(HalfInt(x) for x in (1, 1, 1, 1, 1)))
        sym15 = Symbol3nj(*rows)
        diff = abs(wigner3nj(sym15) - wigner15j(*rows))
        report("3nj(n=5) vs 15j", diff < tol)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
