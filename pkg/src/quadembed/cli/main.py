"""quadembed command line.

Exit codes:
    0  success / positive verdict
    1  negative verdict (NotEquivalent, DoesNotExtend, ...)
    2  verify-paper found a failing check, or a constructed residual is nonzero
    3  a check ran out of its internal budget
    4  inconclusive verdict
    5  bad input: parse error, bad field, parameter constraint
    6  IO error while writing output
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from quadembed.algebra.fields import parse_field
from quadembed.algebra.poly import PolyRing
from quadembed.cli import plot, report
from quadembed.cli.suite import SuiteBudgetExceeded, run_suite
from quadembed.embeddings import FAMILIES, construct, verify_on_quadric
from quadembed.equivalence import jac_extension_decide, nu_equiv, pr_equiv
from quadembed.equivalence.lifts import lift_word, relation_residual, rho1_images
from quadembed.equivalence.verdicts import NEGATIVE, POSITIVE, render
from quadembed.errors import (
    CoefficientError,
    FieldError,
    ParameterConstraintViolated,
    PolySyntaxError,
    UnknownVariable,
)
from quadembed.ideals.quotients import SL2_VARS

EXIT_OK, EXIT_NEGATIVE, EXIT_FAIL, EXIT_BUDGET, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3, 4, 5, 6

INPUT_ERRORS = (PolySyntaxError, UnknownVariable, CoefficientError, FieldError, ParameterConstraintViolated)


class InputError(Exception):
    pass


def _emit(args, field: str, records: list, result: dict | None = None) -> None:
    if not args.json:
        return
    rep = report.make_report(field, args.argv, records, result)
    try:
        report.write(rep, args.json)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc


class _IOFailure(Exception):
    pass


def _field(args):
    try:
        return parse_field(args.field)
    except FieldError as exc:
        raise InputError(str(exc)) from exc


def _parse(text: str, ring: PolyRing, flag: str):
    try:
        return ring.parse(text)
    except INPUT_ERRORS as exc:
        raise InputError(f"{flag}: {exc}") from exc


def _record(name: str, anchor: str, status: str, detail, started: float) -> dict:
    if not isinstance(detail, str):
        detail = json.dumps(detail, sort_keys=True, default=str)
    return {
        "name": name,
        "anchor": anchor,
        "status": status,
        "detail": detail,
        "wall_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def _verdict_exit(outcome: str) -> int:
    if outcome in POSITIVE:
        return EXIT_OK
    if outcome in NEGATIVE:
        return EXIT_NEGATIVE
    return EXIT_INCONCLUSIVE


# --- subcommands ----------------------------------------------------------------------


def cmd_verify_paper(args) -> int:
    k = _field(args)
    budget = None
    try:
        recs = run_suite(k, args.filter)
    except SuiteBudgetExceeded as exc:
        recs, budget = exc.records, exc
    records = [r.to_dict() for r in recs]
    for r in records:
        print(f"{r['status'].upper():<12} {r['name']:<28} {r['detail']}  [{r['wall_ms']} ms]")
    summary = report.summarize(records)
    print(", ".join(f"{n} {s}" for s, n in summary.items()))
    _emit(args, k.descriptor(), records)
    if budget is not None:
        print(f"budget exhausted in {budget.name}", file=sys.stderr)
        return EXIT_BUDGET
    if not records:
        print(f"no check matches {args.filter!r}", file=sys.stderr)
    return EXIT_FAIL if summary["fail"] else EXIT_OK


def cmd_equiv(args) -> int:
    k = _field(args)
    started = time.perf_counter()
    if args.family == "nu":
        T = PolyRing(k, ("t",))
        verdict = nu_equiv(_parse(args.p, T, "--p"), _parse(args.q, T, "--q"))
        anchor = "nu_p equivalent to nu_q iff p(t) = lam q(lam t + mu)"
    elif args.family == "pr":
        T = PolyRing(k, ("t",))
        verdict = pr_equiv(_parse(args.r, T, "--r"), _parse(args.s, T, "--s"))
        anchor = "P_r equivalent to P_s iff r = s"
    else:
        R = PolyRing(k, tuple(v.strip() for v in args.vars.split(",")))
        verdict = jac_extension_decide(_parse(args.f, R, "--f"), _parse(args.g, R, "--g"))
        anchor = "a plane automorphism extends to SL2 iff its Jacobian is +-1"
    result = verdict.to_dict()
    print(verdict.outcome)
    print(json.dumps(result, indent=2, sort_keys=True, default=str))
    rec = _record(f"equiv.{args.family}", anchor, verdict.status, result, started)
    _emit(args, k.descriptor(), [rec], result)
    return _verdict_exit(verdict.outcome)


_CONSTRUCT_KEYS = ("p", "q", "a", "b", "r", "lambda", "n", "m", "mu")


def cmd_construct(args) -> int:
    k = _field(args)
    started = time.perf_counter()
    params = {key: getattr(args, key.replace("lambda", "lam")) for key in _CONSTRUCT_KEYS}
    params = {key: v for key, v in params.items() if v is not None}
    try:
        spec = construct(args.family, params, k)
    except INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc
    result = spec.to_dict()
    print(f"{spec.family} in {spec.ambient} over {k.descriptor()}")
    if spec.components:
        names = spec.ambient_ring.vars
        width = max(len(v) for v in names)
        for v, c in zip(names, spec.components):
            print(f"  {v:<{width}} = {c}")
    for d in spec.defining:
        print(f"  defining: {d} = 0")
    residuals = []
    if spec.components and spec.relations:
        residuals = [str(r) for r in verify_on_quadric(spec).residuals]
    if spec.components and spec.image_equation is not None:
        residuals.append(str(spec.image_equation.substitute(spec.images(), spec.source_ring)))
    if residuals:
        print(f"  residual: {', '.join(residuals)}")
    result["residuals"] = residuals
    ok = all(r == "0" for r in residuals)
    rec = _record(f"construct.{spec.family}", "on-ambient residual of the constructed map", "pass" if ok else "fail",
                  {"residuals": residuals}, started)
    _emit(args, k.descriptor(), [rec], result)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lift(args) -> int:
    k = _field(args)
    started = time.perf_counter()
    R = PolyRing(k, tuple(v.strip() for v in args.vars.split(",")))
    f, g = _parse(args.f, R, "--f"), _parse(args.g, R, "--g")
    verdict = jac_extension_decide(f, g)
    result = verdict.to_dict()
    if verdict.outcome == "Extends" and args.via == "rho1":
        images = lift_word(verdict.witness["word"], "rho1")
        src = (R.gen(R.vars[0]), R.gen(R.vars[1]))
        lhs = {v: images[v].substitute(rho1_images(src), R) for v in SL2_VARS}
        rhs = rho1_images((f, g))
        res = [str(lhs[v] - rhs[v]) for v in SL2_VARS]
        rel = relation_residual(images)
        result["lift"] = {
            "images": {v: str(images[v]) for v in SL2_VARS},
            "relation_residual": str(rel),
            "rho1_residuals": res,
            "verified": rel.is_zero() and all(r == "0" for r in res),
        }
        if not result["lift"]["verified"]:
            raise AssertionError(f"rho1 lift fails verification: {result['lift']}")
    elif verdict.outcome == "Extends":
        result["lift"] = render(verdict.witness["lift"])
    print(verdict.outcome)
    if "lift" in result:
        for v in SL2_VARS:
            print(f"  {v} -> {result['lift']['images'][v]}")
    else:
        print(json.dumps(result, indent=2, sort_keys=True, default=str))
    rec = _record(f"lift.{args.via}", "generator lifts to SL2", verdict.status, result, started)
    _emit(args, k.descriptor(), [rec], result)
    return _verdict_exit(verdict.outcome)


def cmd_plot_trefoil(args) -> int:
    started = time.perf_counter()
    try:
        paths = plot.write_plots(args.out, args.samples, args.size)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc
    for p in paths:
        print(p)
    x0, y0 = plot.PROJECTIONS[0].point(0.0)
    rec = _record("plot.trefoil", "trefoil projections, t in [-2.1, 2.1]", "pass",
                  {"files": paths, "t0": [x0, y0]}, started)
    _emit(args, "Q", [rec], {"files": paths, "samples": args.samples})
    return EXIT_OK


# --- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
    common.add_argument("--json", metavar="PATH", help="also write a JSON report to PATH")

    parser = argparse.ArgumentParser(prog="quadembed", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-paper", parents=[common], help="run the built-in verification suite")
    vp.add_argument("--filter", metavar="GLOB", help="only run checks whose name matches GLOB")
    vp.set_defaults(func=cmd_verify_paper)

    eq = sub.add_parser("equiv", parents=[common], help="decide equivalence of two embeddings")
    fam = eq.add_subparsers(dest="family", required=True)
    nu = fam.add_parser("nu", parents=[common], help="nu_p versus nu_q, p and q in k[t]")
    nu.add_argument("--p", required=True)
    nu.add_argument("--q", required=True)
    pr = fam.add_parser("pr", parents=[common], help="P_r versus P_s, r and s in k[t]")
    pr.add_argument("--r", required=True)
    pr.add_argument("--s", required=True)
    jac = fam.add_parser("jac", parents=[common], help="does the plane automorphism (f, g) extend to SL2")
    jac.add_argument("--f", required=True)
    jac.add_argument("--g", required=True)
    jac.add_argument("--vars", default="s,t", help="the two plane coordinates (default s,t)")
    eq.set_defaults(func=cmd_equiv)

    co = sub.add_parser("construct", parents=[common], help="build an embedding from a family")
    co.add_argument("family", choices=FAMILIES)
    for key in _CONSTRUCT_KEYS:
        dest = "lam" if key == "lambda" else key
        co.add_argument(f"--{key}", dest=dest, metavar="EXPR")
    co.set_defaults(func=cmd_construct)

    li = sub.add_parser("lift", parents=[common], help="lift a plane automorphism of Jacobian +-1 to SL2")
    li.add_argument("--f", required=True)
    li.add_argument("--g", required=True)
    li.add_argument("--vars", default="s,t")
    li.add_argument("--via", choices=("nu", "rho1"), default="nu")
    li.set_defaults(func=cmd_lift)

    pl = sub.add_parser("plot-trefoil", parents=[common], help="write the three trefoil projections as SVG")
    pl.add_argument("--out", default=".", metavar="DIR")
    pl.add_argument("--samples", type=int, default=plot.DEFAULT_SAMPLES)
    pl.add_argument("--size", type=int, default=plot.DEFAULT_SIZE, help="pixels per side")
    pl.set_defaults(func=cmd_plot_trefoil)
    return parser


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    if args.command == "plot-trefoil" and args.samples < 2:
        print("error: --samples must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
