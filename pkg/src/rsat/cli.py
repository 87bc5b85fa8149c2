"""Command-line interface.

Subcommands: gen, solve, cert, sweep, bounds, moments.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 resource
limit.  A completed verification that reports INVALID still exits 0: the
verdict is the output, not a failure of the tool.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import analytics
from .certificates import (
    BUDGET_EXHAUSTED,
    DEFAULT_FIND_BUDGET,
    Bicycle,
    find_bicycle,
    find_snake,
    verify_bicycle,
    verify_snake,
)
from .errors import ParseError, ResourceLimit, RsatError
from .fileformat import (
    parse_certificate,
    parse_formula,
    render_certificate,
    render_formula,
    vspec_from_token,
)
from .formula import Formula
from .rng import Stream
from .sampler import GenConfig, sample_formula
from .solver import DEFAULT_NODE_BUDGET, solve_2rsat_scc, solve_complete
from .sweep import SweepConfig, render_limited_report, render_sweep_csv, run_sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_RESOURCE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rsat", description="regular signed k-SAT toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="sample a random formula")
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--v", default="continuous", help="finite:<v> | dyadic:<lam> | continuous")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--distinct", action="store_true", help="distinct variables per clause")
    p_gen.add_argument(
        "--distinct-thresholds", action="store_true", help="resample colliding right-hand sides"
    )
    p_gen.add_argument("--out", default=None)

    p_solve = sub.add_parser("solve", help="decide a formula file")
    p_solve.add_argument("file", nargs="?", default=None)
    p_solve.add_argument("--stdin", action="store_true")
    p_solve.add_argument("--decider", choices=("auto", "scc", "complete"), default="auto")
    p_solve.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)

    p_cert = sub.add_parser("cert", help="find or verify certificates")
    cert_sub = p_cert.add_subparsers(dest="cert_command", required=True)
    p_find = cert_sub.add_parser("find", help="search for a certificate")
    p_find.add_argument("kind", choices=("bicycle", "snake"))
    p_find.add_argument("file", nargs="?", default=None)
    p_find.add_argument("--stdin", action="store_true")
    p_find.add_argument("--budget", type=int, default=DEFAULT_FIND_BUDGET)
    p_find.add_argument("--out", default=None)
    p_verify = cert_sub.add_parser("verify", help="check a certificate against a formula")
    p_verify.add_argument("file", nargs="?", default=None)
    p_verify.add_argument("--stdin", action="store_true")
    p_verify.add_argument("--cert", required=True)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo satisfiability sweep, CSV output")
    p_sweep.add_argument("--k", type=int, required=True)
    p_sweep.add_argument("--v", action="append", required=True, help="repeatable vspec token")
    p_sweep.add_argument("--n", action="append", type=int, required=True)
    p_sweep.add_argument("--c", action="append", required=True, help="repeatable ratio, e.g. 3/2")
    p_sweep.add_argument("--trials", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--decider", choices=("auto", "scc", "complete"), default="auto")
    p_sweep.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p_sweep.add_argument("--distinct", action="store_true")
    p_sweep.add_argument("--out", default=None)

    p_bounds = sub.add_parser("bounds", help="closed-form threshold bounds")
    p_bounds.add_argument("--k", type=int, required=True)
    p_bounds.add_argument("--v", action="append", type=int, default=None)

    p_moments = sub.add_parser("moments", help="factorial moments of the occurrence profile")
    p_moments.add_argument("--n", type=int, required=True)
    p_moments.add_argument("--m", type=int, required=True)
    p_moments.add_argument("--k", type=int, required=True)
    p_moments.add_argument("--d", required=True, help="comma-separated exponents, one per variable")
    p_moments.add_argument("--mc", type=int, default=0, help="Monte Carlo sample count")
    p_moments.add_argument("--seed", type=int, default=0)

    return parser


def _read_formula(args) -> Formula:
    if args.stdin or args.file is None:
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    return parse_formula(text)


def _write_out(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_gen(args) -> int:
    cfg = GenConfig(
        k=args.k,
        n=args.n,
        m=args.m,
        vspec=vspec_from_token(args.v),
        distinct_vars_per_clause=args.distinct,
        seed=args.seed,
        distinct_thresholds=args.distinct_thresholds,
    )
    _write_out(render_formula(sample_formula(cfg)), args.out)
    return EXIT_OK


def _cmd_solve(args) -> int:
    f = _read_formula(args)
    use_scc = args.decider == "scc" or (args.decider == "auto" and f.k == 2)
    if use_scc:
        result = solve_2rsat_scc(f)
    else:
        result = solve_complete(f, budget=args.budget)
    if result.sat:
        print("SAT")
        for var in sorted(result.witness):
            value = result.witness[var]
            print(f"v {var} {value.numerator}/{value.denominator}")
    else:
        print("UNSAT")
    return EXIT_OK


def _cmd_cert(args) -> int:
    if args.cert_command == "find":
        f = _read_formula(args)
        if args.kind == "bicycle":
            outcome = find_bicycle(f, budget=args.budget)
        else:
            outcome = find_snake(f, budget=args.budget)
        if outcome is BUDGET_EXHAUSTED:
            print("BUDGET-EXHAUSTED")
            return EXIT_RESOURCE
        if outcome is None:
            print("NONE")
            return EXIT_OK
        _write_out(render_certificate(outcome), args.out)
        return EXIT_OK

    f = _read_formula(args)
    try:
        with open(args.cert, "r", encoding="utf-8") as handle:
            cert = parse_certificate(handle.read())
    except OSError as exc:
        raise ParseError(f"cannot read {args.cert}: {exc.strerror}") from None
    if isinstance(cert, Bicycle):
        ok = verify_bicycle(f, cert)
    else:
        ok = verify_snake(f, cert)
    print("VALID" if ok else "INVALID")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        c_grid = tuple(Fraction(c) for c in args.c)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"bad ratio in --c: {exc}") from None
    cfg = SweepConfig(
        k=args.k,
        vspecs=tuple(vspec_from_token(tok) for tok in args.v),
        n_values=tuple(args.n),
        c_grid=c_grid,
        trials=args.trials,
        seed=args.seed,
        decider=args.decider,
        budget=args.budget,
        distinct_vars_per_clause=args.distinct,
    )
    results = run_sweep(cfg)
    _write_out(render_sweep_csv(results), args.out)
    if any(r.limited for r in results):
        report = render_limited_report(results)
        if args.out is not None:
            with open(args.out + ".limited.csv", "w", encoding="utf-8") as handle:
                handle.write(report)
        sys.stderr.write(report)
    return EXIT_OK


# Previously reported almost-never thresholds, printed for comparison.
REFERENCE_UNSAT_BOUND = {2: 12.664, 3: 36.1}


def bound_reports(k: int, vs: list[int]) -> list[analytics.BoundReport]:
    root = analytics.thm1_root(k)
    reports = [analytics.BoundReport("unsat_bound_root", root, "value=1", k=k, c=root)]
    reference = REFERENCE_UNSAT_BOUND.get(k)
    if reference is not None:
        value = analytics.thm1_value(k, reference)
        verdict = "<1" if value < 1.0 else ">=1"
        reports.append(
            analytics.BoundReport("unsat_bound_reference", reference, "", k=k, c=reference)
        )
        reports.append(
            analytics.BoundReport(
                "unsat_bound_value_at_reference", value, verdict, k=k, c=reference
            )
        )
    for v in vs:
        bb = analytics.bejar_bound(v)
        verdict = "<root" if bb < root else ">=root"
        reports.append(analytics.BoundReport("width3_unsat_bound", bb, verdict, v=v))
    # smallest v where the width-3 bound exceeds this k's root: v = ceil((8/7)^root)
    log_v = root * math.log(8.0 / 7.0)
    if log_v < 700.0:
        crossover = max(2, math.floor(math.exp(log_v)) + 1)
        while analytics.bejar_bound(crossover - 1) > root and crossover > 2:
            crossover -= 1
        reports.append(
            analytics.BoundReport("crossover_v", float(crossover), f"v={crossover}", k=k, v=crossover)
        )
    else:
        magnitude = log_v / math.log(10.0)
        reports.append(
            analytics.BoundReport("crossover_v", math.inf, f"v=>10^{magnitude:.0f}", k=k)
        )
    return reports


def _cmd_bounds(args) -> int:
    k = args.k
    vs = args.v if args.v else [2, 3, 4, 8, 16]
    for report in bound_reports(k, vs):
        if report.name == "crossover_v":
            print(f"{report.name} k={k} {report.verdict}")
        elif report.name == "width3_unsat_bound":
            print(f"{report.name} v={report.v} c={report.value:.6f}")
        elif report.name == "unsat_bound_reference":
            print(f"{report.name} k={k} c={report.value}")
        elif report.name == "unsat_bound_value_at_reference":
            print(f"{report.name} k={k} value={report.value:.6f}")
        else:
            print(f"{report.name} k={k} c={report.value:.6f}")
    return EXIT_OK


def _sample_profile(n: int, km: int, stream: Stream) -> list[int]:
    counts = [0] * n
    for _ in range(km):
        counts[stream.below(n)] += 1
    return counts


def _cmd_moments(args) -> int:
    try:
        d = [int(part) for part in args.d.split(",")]
    except ValueError:
        raise _UsageError(f"bad --d list: {args.d!r}") from None
    exact = analytics.exact_factorial_moment(args.n, args.m, args.k, d)
    big_d = sum(d)
    cap = (args.k * args.m / args.n) ** big_d
    print(f"exact {exact.numerator}/{exact.denominator} ({float(exact):.6f})")
    print(f"cap_power {cap:.6f}")
    print(f"within_cap {float(exact) <= cap + 1e-12}")
    if args.mc > 0:
        stream = Stream(args.seed)
        km = args.k * args.m
        total = 0.0
        total_sq = 0.0
        for _ in range(args.mc):
            profile = _sample_profile(args.n, km, stream)
            prod = 1
            for j, dj in enumerate(d):
                prod *= analytics.falling_factorial(profile[j], dj)
            total += prod
            total_sq += prod * prod
        mean = total / args.mc
        var = max(0.0, total_sq / args.mc - mean * mean)
        sigma = (var / args.mc) ** 0.5
        print(f"mc_mean {mean:.6f} mc_sigma {sigma:.6f} samples {args.mc}")
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "cert": _cmd_cert,
    "sweep": _cmd_sweep,
    "bounds": _cmd_bounds,
    "moments": _cmd_moments,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_IO
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
    except ResourceLimit as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except RsatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())
