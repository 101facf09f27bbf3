"""Command-line interface: ``ghvmirror <command> ... [--json] [--out FILE]``.

Exit codes: 0 ok, 1 a check failed, 2 inconclusive, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebra.laurent import NonMonomialDenominator
from .gauss_manin import (BasisNotIndependent, BasisSpec, Frame, GMContext, NonStabilizing, basic_example_verify,
                          birkhoff_quadric_verify, gm_reduce, infer_grading, replay)
from .ghv import build_model, critical_data, epsilon_symmetry, jacobian_ring_data, verify_homogeneity
from .infinity import (GENERIC, NotIsolated, NotRational, PositiveDimensionalSingularLocus, conjecture_check,
                       fiber_singularities, homogenize_graph, nu_at_point)
from .parser import NonIntegerExponent, NotAPolynomial, ParseError, parse_ast, parse_expression, variables
from .qde import build_PH, reduce_PH, theta0_relation
from .report import USAGE_EXIT, Report
from .wps import WeightSystem, analyze


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


INPUT_ERRORS = (UsageError, ParseError, NonMonomialDenominator, NonIntegerExponent, NotAPolynomial, ValueError,
                ZeroDivisionError)


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _fraction_list(s: str) -> list[Fraction]:
    return [_fraction(x) for x in s.split(",") if x.strip()]


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {s!r}") from None


def _weights(args) -> WeightSystem:
    return WeightSystem(tuple(args.weights), args.degree)


# commands -------------------------------------------------------------------------


def cmd_wps(args, argv) -> Report:
    rep = analyze(_weights(args))
    return Report(argv, "ok", rep.to_dict())


def cmd_qde(args, argv) -> Report:
    w = _weights(args)
    P = build_PH(w)
    left, right = P.factor_strings()
    result = {"operator": str(P), "expanded": str(P.expand()), "order": P.order,
              "left_factors": left, "right_factors": right}
    status = "ok"
    if args.reduce:
        red = reduce_PH(P, w)
        rel = theta0_relation(red.reduced, w)
        result["reduced"] = {
            "operator": str(red.reduced),
            "expanded": str(red.reduced.expand()),
            "rank": red.rank,
            "v": list(red.v),
            "cancelled_roots": list(red.cancelled),
            "theta0_charpoly": str(rel.charpoly),
            "constant": rel.constant,
            "expected_constant": rel.expected_constant,
            "relation_holds": rel.relation_holds,
        }
        if red.rank != w.n or not rel.relation_holds:
            status = "failed"
    return Report(argv, status, result)


def cmd_ghv(args, argv) -> Report:
    w = _weights(args)
    m = build_model(w, args.J)
    base = {"weights": list(w.weights), "degree": w.degree, "r": m.r, "index_set": list(m.index_set),
            "mu": m.mu}
    if args.action == "model":
        hom = verify_homogeneity(m)
        eps = epsilon_symmetry(m)
        base.update({"f_Q": str(m.f_Q), "f_q": str(m.f_q), "f_q_at_1": str(m.f_at_q(1)),
                     "variables": list(m.f_Q.vars), "grading": list(m.grading()), "u_weights": list(m.u_weights),
                     "wn": m.wn, "homogeneous": hom.holds, "weighted_degree": hom.weighted_degree,
                     "eps_symmetry": eps})
        return Report(argv, "ok" if hom.holds and eps else "failed", base)
    if args.action == "critical":
        cd = critical_data(m)
        base.update({"count": cd.count, "points": [[str(x) for x in p] for p in cd.points],
                     "values": [str(v) for v in cd.values], "expected_values": [str(v) for v in cd.expected_values],
                     "gradient_vanishes": cd.gradient_vanishes, "values_match": cd.values_match,
                     "nondegenerate": cd.nondegenerate, "hessian": str(cd.hessian_s)})
        ok = cd.gradient_vanishes and cd.values_match and cd.nondegenerate and cd.count == m.mu
        return Report(argv, "ok" if ok else "failed", base)
    jd = jacobian_ring_data(m)
    base.update({"jacobian_dim": jd.mu, "power_basis": jd.power_basis_ok, "power_relation": jd.power_relation_ok,
                 "f_power_normal_form": str(jd.power_normal_form), "expected_power": str(jd.expected_power),
                 "charpoly": str(jd.charpoly), "eigenvalues_distinct": jd.eigenvalues_distinct,
                 "nonisolated_locus": jd.nonisolated_locus, "mult_f": jd.mult_f_matrix})
    diags = ["the critical locus has a non-isolated part S = 0; the ring is saturated by S"] if jd.nonisolated_locus \
        else []
    ok = jd.mu == m.mu and jd.power_relation_ok
    return Report(argv, "ok" if ok else "failed", base, diags)


def cmd_gm(args, argv) -> Report:
    if args.action == "quadric-birkhoff":
        r = birkhoff_quadric_verify(args.n, check_euler=not args.skip_euler)
        p = r.pair
        result = {"n": r.n, "A0": p.A0, "A1": p.A1, "Omega0": p.Omega0, "Omega1": p.Omega1,
                  "charpoly_A0": str(r.charpoly), "checks": r.checks(),
                  "printed_annihilator_holds": r.printed_annihilator_holds}
        diags = []
        if not r.printed_annihilator_holds:
            diags.append("the annihilator with theta*nabla coefficient 2n(n-1)^(n-1) does not kill eps0; "
                         "the check uses 4(n-1)^(n-1), the value forced by charpoly(A0)")
        return Report(argv, "ok" if r.ok else "failed", result, diags)
    if args.action == "basic-example":
        r = basic_example_verify(args.bound)
        result = {"bound": r.bound, "checks": r.checks(), "recursion_failures": r.recursion_failures,
                  "reduction_failures": r.reduction_failures,
                  "coefficients": {f"x^{a} y^{b}": c for (a, b), c in sorted(r.coefficients.items())}}
        return Report(argv, "ok" if r.ok else "failed", result)
    return _gm_reduce(args, argv)


def _gm_reduce(args, argv) -> Report:
    exprs = [args.f, args.cls] + list(args.basis or [])
    names: list[str] = []
    for e in exprs:
        for v in variables(parse_ast(e)):
            if v not in names and v != args.param:
                names.append(v)
    vars = tuple(names) + ((args.param,) if args.param else ())
    f = parse_expression(args.f, "laurent", vars)
    frame = Frame(args.frame)
    grading = tuple(args.grading) if args.grading else infer_grading(f)
    ctx = GMContext(f.with_grading(None), frame, args.param, grading)
    s = ctx.section(parse_expression(args.cls, "laurent", vars), args.level)
    basis = None
    if args.basis:
        basis = BasisSpec(tuple(ctx.section(parse_expression(b, "laurent", vars)) for b in args.basis),
                          tuple(args.basis))
    result = {"f": str(f), "class": str(s), "frame": frame.value, "variables": list(vars),
              "grading": list(grading) if grading else None}
    notes = [] if grading else ["f is not quasi-homogeneous: the relation search is not degree-filtered"]
    try:
        red = gm_reduce(ctx, s, basis, args.max_depth, args.max_margin)
    except NonStabilizing as exc:
        return Report(argv, "inconclusive", result, notes + [f"NonStabilizing: {exc}"])
    except BasisNotIndependent as exc:
        return Report(argv, "failed", result, notes + [f"BasisNotIndependent: {exc}"])
    zero = replay(ctx, s, basis, red).is_zero()
    if basis is None:
        result["in_relation_module"] = True
    else:
        result["coordinates"] = {lab: str(c) for lab, c in zip(basis.labels, red.coordinates)}
    result.update({"certificate_terms": len(red.certificate), "margin": red.margin, "replay_zero": zero})
    return Report(argv, "ok" if zero else "failed", result, notes)


def _t_value(s: Optional[str]):
    if s is None:
        return Fraction(0)
    if s == "generic":
        return GENERIC
    return _fraction(s)


def cmd_infinity(args, argv) -> Report:
    f = parse_expression(args.f, "laurent")
    den = parse_expression(args.denominator, "laurent", f.vars) if args.denominator else None
    c = homogenize_graph(f, den)
    result = {"f": str(f), "F": str(c.F), "P": str(c.P_part), "Q": str(c.Q_part), "degree": c.degree,
              "variables": list(c.F.vars)}
    if args.action == "homogenize":
        return Report(argv, "ok", result)
    t = _t_value(args.t)
    result["t"] = str(t)
    try:
        if args.action == "singular":
            fs = fiber_singularities(c, t, base_locus_only=args.base_locus)
            result["points"] = [{"coords": [str(x) for x in p.coords], "chart": p.chart,
                                 "multiplicity": p.multiplicity, "at_infinity": p.at_infinity} for p in fs.points]
            result["complete"] = fs.complete
            result["quotient_dims"] = {f"X{j}": d for j, d in fs.quotient_dims.items()}
            return Report(argv, "ok" if fs.complete else "inconclusive", result, fs.diagnostics)
        if t == GENERIC:
            raise UsageError("nu needs a numeric --t")
        if args.point:
            points = [tuple(args.point)]
        else:
            fs = fiber_singularities(c, t, base_locus_only=True)
            if not fs.complete:
                return Report(argv, "inconclusive", result, fs.diagnostics)
            points = [p.coords for p in fs.points]
        reports = [nu_at_point(c, p, t, branch_sum=args.branch_sum) for p in points]
    except (NotRational, NotIsolated, PositiveDimensionalSingularLocus) as exc:
        return Report(argv, "inconclusive", result, [f"{type(exc).__name__}: {exc}"])
    result["points"] = [r.to_dict() for r in reports]
    result["nu_total"] = sum(r.nu for r in reports)
    sane = all(r.sanity_ok for r in reports)
    diags = [] if sane else ["branch Milnor sums at sample t values disagree with mu_generic"]
    return Report(argv, "ok" if sane else "failed", result, diags)


def cmd_conjecture(args, argv) -> Report:
    rep = conjecture_check(_weights(args), args.max_q)
    status = {"verified": "ok", "refuted": "failed"}.get(rep.status, "inconclusive")
    d = rep.to_dict()
    diags = d.pop("diagnostics")
    return Report(argv, status, d, diags)


def cmd_verify_all(args, argv) -> Report:
    from .acceptance import run_all, run_criterion

    if args.only:
        outcomes = [run_criterion(k) for k in args.only]
    else:
        outcomes = run_all()
    result = {"criteria": [{"number": o.number, "title": o.title, "passed": o.passed, "detail": o.detail}
                           for o in outcomes],
              "summary": [o.line() for o in outcomes]}
    return Report(argv, "ok" if all(o.passed for o in outcomes) else "failed", result)


# argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")

    weights = _Parser(add_help=False)
    weights.add_argument("--weights", type=_int_list, required=True, help="comma-separated weights w0,...,wn")
    weights.add_argument("--degree", type=int, required=True)

    top = _Parser(prog="ghvmirror", description="Exact computations for mirrors of weighted projective "
                                                "hypersurfaces.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("wps", parents=[common, weights], help="smoothness and classification")
    p.set_defaults(run=cmd_wps)

    p = sub.add_parser("qde", parents=[common, weights], help="quantum differential operator")
    p.add_argument("--reduce", action="store_true", help="cancel common factors and report the rank")
    p.set_defaults(run=cmd_qde)

    p = sub.add_parser("ghv", parents=[common, weights], help="Laurent polynomial model")
    p.add_argument("action", choices=["model", "critical", "jacobian"])
    p.add_argument("--J", type=_int_list, default=None, help="index set (default: the canonical one)")
    p.set_defaults(run=cmd_ghv)

    gm = sub.add_parser("gm", help="Gauss-Manin systems")
    gsub = gm.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = gsub.add_parser("quadric-birkhoff", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--skip-euler", action="store_true")
    p.set_defaults(run=cmd_gm)
    p = gsub.add_parser("basic-example", parents=[common])
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(run=cmd_gm)
    p = gsub.add_parser("reduce", parents=[common])
    p.add_argument("--f", required=True, help="the function, e.g. 'x*y^2 - y'")
    p.add_argument("--class", dest="cls", required=True, help="the form coefficient g in [g w]")
    p.add_argument("--basis", nargs="+", help="basis coefficients (omit to test membership in the relations)")
    p.add_argument("--frame", choices=[x.value for x in Frame], default="torus")
    p.add_argument("--param", default=None, help="name of the coefficient parameter (last variable)")
    p.add_argument("--grading", type=_fraction_list, default=None)
    p.add_argument("--level", type=int, default=0, help="theta power of the class")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--max-margin", type=int, default=3)
    p.set_defaults(run=cmd_gm)

    p = sub.add_parser("infinity", parents=[common], help="graph compactification and nu")
    p.add_argument("action", choices=["homogenize", "singular", "nu"])
    p.add_argument("--f", required=True)
    p.add_argument("--denominator", default=None)
    p.add_argument("--t", default=None, help="fibre value (rational or 'generic'; default 0)")
    p.add_argument("--point", type=_fraction_list, default=None, help="projective point for nu")
    p.add_argument("--branch-sum", type=int, default=None)
    p.add_argument("--base-locus", action="store_true", help="only points in the base locus")
    p.set_defaults(run=cmd_infinity)

    p = sub.add_parser("conjecture", parents=[common, weights], help="nu at infinity versus n + d - w")
    p.add_argument("--max-q", type=int, default=64)
    p.set_defaults(run=cmd_conjecture)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=_int_list, default=None, help="criterion numbers")
    p.set_defaults(run=cmd_verify_all)
    return top


def run_command(argv: Sequence[str]) -> tuple[Report, int]:
    """Parse and run; raises UsageError (and input errors) for exit code 3."""
    argv = list(argv)
    args = build_parser().parse_args(argv)
    rep = args.run(args, argv)
    return rep, rep.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rep = args.run(args, argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except INPUT_ERRORS as exc:
        msg = str(exc) if isinstance(exc, UsageError) else f"error: {type(exc).__name__}: {exc}"
        print(msg, file=sys.stderr)
        return USAGE_EXIT
    text = rep.to_json() if args.json else rep.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
