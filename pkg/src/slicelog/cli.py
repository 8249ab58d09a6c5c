"""Command-line front end.

    slicelog eval     --fn F.json --at "1+2i-j"
    slicelog exp      --fn F.json [--route direct|formula|both] [--save E.json]
    slicelog log      --fn G.json [--save L.json]
    slicelog cossin   --a0 A.json --a1 B.json
    slicelog classify --fn P.json
    slicelog verify   [--suite all|identities|roundtrip|obstruction]

Every command accepts ``--order N`` (default 64), ``--tol T`` (default 1e-10)
and ``--out report.json``; ``--json`` prints the report instead of the
summary.  Exit codes: 0 ok, 1 parse or I/O error, 2 precondition violated,
3 obstruction found, 4 residual or consistency failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import checks
from .errors import DomainError, SliceError
from .fileio import FunctionFileError, jet_to_dict, load_function, save_function
from .quat import format_short, parse_quaternion
from .report import CheckResult, quat_entry, report_emit
from .series import DEFAULT_ORDER, RJet, TrustRadiusWarning, as_qjet, eval_jet, jet_distance
from .starexp import star_exp_direct, star_exp_formula
from .starlog import LogConfig, cossin_solve, star_log
from .zeros import Obstruction, classify_zeros

EXIT_OK = 0
EXIT_IO = 1
EXIT_PRECONDITION = 2
EXIT_OBSTRUCTION = 3
EXIT_RESIDUAL = 4


class Outcome:
    """What a command produced: a report payload, summary lines and an exit code."""

    def __init__(self, payload, lines, code=EXIT_OK, inputs=None):
        self.payload = payload
        self.lines = lines
        self.code = code
        self.inputs = inputs or {}


def _load(path, args):
    return load_function(path, args.order)


def cmd_eval(args) -> Outcome:
    F = _load(args.fn, args)
    q = parse_quaternion(args.at)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TrustRadiusWarning)
        value = eval_jet(F, q)
    notes = [str(w.message) for w in caught]
    payload = {**quat_entry(value, "value"), "warnings": notes}
    lines = [f"F({format_short(q)}) = {format_short(value)}"] + [f"warning: {n}" for n in notes]
    return Outcome(payload, lines, inputs={"fn": str(args.fn), "at": q.to_list(), "order": args.order})


def cmd_exp(args) -> Outcome:
    F = as_qjet(_load(args.fn, args))
    inputs = {"fn": str(args.fn), "route": args.route, "order": args.order, "tol": args.tol}
    payload = {}
    code = EXIT_OK
    if args.route in ("formula", "both"):
        E = star_exp_formula(F)
    if args.route in ("direct", "both"):
        D = star_exp_direct(F)
    if args.route == "direct":
        E = D
    lines = [f"exp_* computed by the {args.route} route(s), order {F.order}"]
    if args.route == "both":
        gap = jet_distance(D, E)
        ok = gap <= args.tol
        payload["route_agreement"] = CheckResult("direct vs formula", ok, gap, args.tol).to_dict()
        lines.append(f"route agreement {gap:.3e} ({'pass' if ok else 'FAIL'} at tol {args.tol:g})")
        if not ok:
            code = EXIT_RESIDUAL
    payload["result"] = jet_to_dict(E)
    lines.append(f"exp_*(F)(0) = {format_short(E[0])}")
    if args.save:
        save_function(args.save, E)
        lines.append(f"saved to {args.save}")
    return Outcome(payload, lines, code, inputs)


def cmd_log(args) -> Outcome:
    G = as_qjet(_load(args.fn, args))
    inputs = {"fn": str(args.fn), "order": args.order}
    config = LogConfig()
    result = star_log(G, config)
    if isinstance(result, Obstruction):
        return Outcome(result, [result.describe()], EXIT_OBSTRUCTION, inputs)
    lines = [
        f"*-logarithm found by the {result.route} route"
        + (f" (branch shift m = {result.shift})" if result.shift else ""),
        f"residual {result.residual:.3e} coefficientwise, {result.point_residual:.3e} pointwise",
    ]
    if args.save:
        save_function(args.save, result.f)
        lines.append(f"saved to {args.save}")
    return Outcome(result, lines, EXIT_OK, inputs)


def _as_rjet(F) -> RJet:
    return F if isinstance(F, RJet) else F.to_rjet(1e-12)


def cmd_cossin(args) -> Outcome:
    a0 = _as_rjet(_load(args.a0, args))
    a1 = _as_rjet(_load(args.a1, args))
    gamma = cossin_solve(a0, a1, tol=args.tol)
    c, s = gamma.cos_sin()
    check = max(jet_distance(c, a0), jet_distance(s, a1))
    payload = {
        "result": jet_to_dict(gamma),
        "reconstruction": CheckResult("cos/sin reconstruction", check <= args.tol, check, args.tol).to_dict(),
    }
    lines = [f"gamma(0) = {float(gamma.coeffs[0])!r}", f"reconstruction error {check:.3e}"]
    inputs = {"a0": str(args.a0), "a1": str(args.a1), "order": args.order, "tol": args.tol}
    return Outcome(payload, lines, inputs=inputs)


def cmd_classify(args) -> Outcome:
    F = as_qjet(_load(args.fn, args))
    report = classify_zeros(F.coeffs)
    lines = [f"real zero {x!r} (multiplicity {m})" for x, m in report.real_zeros]
    lines += [f"spherical zero {a!r} + {b!r} S" for a, b in report.spherical_zeros]
    lines += [f"isolated zero {format_short(q)}" for q in report.isolated_zeros]
    lines.append(f"max residual {report.max_residual:.3e}")
    return Outcome(report, lines, inputs={"fn": str(args.fn), "order": args.order})


def cmd_verify(args) -> Outcome:
    results = checks.run_suite(args.suite, args.order)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}  (max residual {r.max_residual:.3e})" for r in results
    ]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_RESIDUAL
    return Outcome(results, lines, code, {"suite": args.suite, "order": args.order})


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors (exit 1); argparse would use 2, our precondition code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order N (default 64)")
    common.add_argument("--tol", type=float, default=1e-10, help="comparison tolerance (default 1e-10)")
    common.add_argument("--out", type=Path, help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report on stdout")

    parser = _Parser(prog="slicelog", description="*-exponentials and *-logarithms of quaternionic jets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function file at a quaternion")
    p.add_argument("--fn", type=Path, required=True)
    p.add_argument("--at", required=True, help='quaternion literal such as "1+2i-3j+4k"')
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("exp", parents=[common], help="*-exponential of a function file")
    p.add_argument("--fn", type=Path, required=True)
    p.add_argument("--route", choices=("direct", "formula", "both"), default="formula")
    p.add_argument("--save", type=Path, help="write the result as a function file")
    p.set_defaults(handler=cmd_exp)

    p = sub.add_parser("log", parents=[common], help="*-logarithm or the obstruction to one")
    p.add_argument("--fn", type=Path, required=True)
    p.add_argument("--save", type=Path, help="write the logarithm as a function file")
    p.set_defaults(handler=cmd_log)

    p = sub.add_parser("cossin", parents=[common], help="solve cos(gamma) = a0, sin(gamma) = a1")
    p.add_argument("--a0", type=Path, required=True)
    p.add_argument("--a1", type=Path, required=True)
    p.set_defaults(handler=cmd_cossin)

    p = sub.add_parser("classify", parents=[common], help="zeros of a quaternionic polynomial")
    p.add_argument("--fn", type=Path, required=True)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--suite", choices=("all",) + checks.SUITES, default="all")
    p.set_defaults(handler=cmd_verify)
    return parser


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order < 0:
        return _fail("--order must be nonnegative", EXIT_IO)
    try:
        outcome = args.handler(args)
    except (OSError, FunctionFileError) as exc:
        return _fail(str(exc), EXIT_IO)
    except ValueError as exc:
        # DomainError derives from ValueError; anything else is a malformed literal
        if isinstance(exc, (DomainError,)):
            return _fail(str(exc), EXIT_PRECONDITION)
        return _fail(str(exc), EXIT_IO)
    except (SliceError, ArithmeticError) as exc:
        residual = getattr(exc, "residual", None)
        extra = f" (residual {residual:.3e})" if residual is not None else ""
        return _fail(f"{exc}{extra}", EXIT_RESIDUAL)

    text = report_emit(outcome.payload, args.command, outcome.inputs)
    if args.out:
        try:
            args.out.write_text(text)
        except OSError as exc:
            return _fail(str(exc), EXIT_IO)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in outcome.lines:
            print(line)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
