"""Singular points at infinity of Laurent polynomials.

A function f = P/Q with Q a monomial is compactified by the closure of its
graph in P^n x P^1, cut out by F = P~ - t Q~ where ~ homogenizes with X_0 to
the degree of P.  Singular points of the fibres lie on the base locus
A = {P~ = Q~ = 0}; vanishing cycles at such a point are counted by the drop of
the Milnor number of the fibre at t = a against the nearby fibres.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .algebra.groebner import GroebnerBasis
from .algebra.laurent import LaurentPoly, NonMonomialDenominator
from .algebra.local import INFINITE
from .algebra.matrix import charpoly
from .algebra.ratfunc import RatFunc, SpecializationError
from .algebra.roots import (PositiveDimensional, local_multiplicity, solve_zero_dimensional,
                            specialize_point)
from .algebra.upoly import UPoly, rational_roots
from .ghv import GHVModel, build_model
from .wps import WeightSystem, analyze

GENERIC = "generic"


class DegreeViolation(ValueError):
    pass


class NotRational(ArithmeticError):
    pass


class NotIsolated(ArithmeticError):
    pass


class PositiveDimensionalSingularLocus(ArithmeticError):
    pass


class PathHitsPole(ZeroDivisionError):
    pass


# graph compactification ------------------------------------------------------------


@dataclass(frozen=True)
class GraphCompactification:
    F: LaurentPoly
    P_part: LaurentPoly
    Q_part: LaurentPoly
    source_vars: tuple[str, ...]

    @property
    def degree(self) -> int:
        return self.P_part.total_degree()

    @property
    def xvars(self) -> tuple[str, ...]:
        return self.P_part.vars

    @property
    def nx(self) -> int:
        return len(self.xvars)

    def fiber(self, t_value) -> LaurentPoly:
        """F at t = t_value; GENERIC keeps t as the parameter of Q(t) coefficients."""
        gen = RatFunc.gen("t") if t_value is GENERIC else Fraction(t_value)
        out: dict = {}
        for e, c in self.F.terms.items():
            key = e[:-1]
            out[key] = out.get(key, 0) + c * gen ** e[-1]
        return LaurentPoly(self.xvars, out)

    def in_base_locus(self, coords: Sequence) -> bool:
        one = Fraction(1)
        return self.P_part.evaluate(coords, one) == 0 and self.Q_part.evaluate(coords, one) == 0


def _rational_coeffs(f: LaurentPoly) -> LaurentPoly:
    def conv(c):
        if isinstance(c, RatFunc):
            if not c.is_const():
                raise ValueError("specialize the parameters of f before homogenizing")
            return c.const_value()
        return Fraction(c)
    return f.map_coeffs(conv)


def homogenize_graph(f: LaurentPoly, denominator: Optional[LaurentPoly] = None) -> GraphCompactification:
    """F = P~ - t Q~ for f = P/Q (Q read off the negative exponents unless given)."""
    f = _rational_coeffs(f)
    if f.is_zero():
        raise DegreeViolation("f = 0 has no graph compactification")
    if denominator is None:
        P, b = f.split_monomial_denominator()
        qc = Fraction(1)
    else:
        if not denominator.is_monomial() or denominator.is_laurent():
            raise NonMonomialDenominator(f"denominator {denominator} is not a monomial")
        if f.is_laurent():
            raise ValueError("numerator must be a polynomial")
        (b, qc), = denominator.terms.items()
        # cancel the monomial gcd of P and Q
        low = f.min_exponents()
        common = tuple(min(x, y) for x, y in zip(low, b))
        P = f.shift(tuple(-c for c in common))
        b = tuple(x - c for x, c in zip(b, common))
    D = P.total_degree()
    if D < sum(b):
        raise DegreeViolation(f"deg P = {D} < deg Q = {sum(b)}")
    n = len(f.vars)
    xv = tuple(f"X{i}" for i in range(n + 1))
    P_t = {(D - sum(e),) + e: Fraction(c) / qc for e, c in P.terms.items()}
    Q_t = {(D - sum(b),) + b: Fraction(1)}
    F = dict((e + (0,), c) for e, c in P_t.items())
    for e, c in Q_t.items():
        F[e + (1,)] = F.get(e + (1,), 0) - c
    return GraphCompactification(LaurentPoly(xv + ("t",), F), LaurentPoly(xv, P_t),
                                 LaurentPoly(xv, Q_t), f.vars)


# fibres ------------------------------------------------------------------------------


def _chart(p: LaurentPoly, j: int) -> LaurentPoly:
    """Set X_j = 1."""
    vars = p.vars[:j] + p.vars[j + 1:]
    out: dict = {}
    for e, c in p.terms.items():
        key = e[:j] + e[j + 1:]
        out[key] = out.get(key, 0) + c
    return LaurentPoly(vars, out)


def _singular_equations(c: GraphCompactification, Fx: LaurentPoly, j: int, pin: bool,
                        base_locus: bool) -> list[LaurentPoly]:
    eqs = [_chart(Fx, j)] + [_chart(Fx.diff(i), j) for i in range(c.nx)]
    if base_locus:
        eqs += [_chart(c.P_part, j), _chart(c.Q_part, j)]
    if pin:
        # points with X_0 = .. = X_{j-1} = 0 belong to chart j only
        vars = eqs[0].vars
        eqs += [LaurentPoly.gen(vars[i], vars) for i in range(j)]
    return [e for e in eqs if e]


def _lift_point(affine: Sequence, j: int) -> tuple:
    return tuple(affine[:j]) + (Fraction(1),) + tuple(affine[j:])


def normalize_point(coords: Sequence) -> tuple:
    j = next((i for i, x in enumerate(coords) if x != 0), None)
    if j is None:
        raise ValueError("the zero vector is not a projective point")
    lead = coords[j]
    return tuple(x / lead if x != 0 else Fraction(0) for x in coords)


@dataclass(frozen=True)
class SingularPoint:
    coords: tuple
    chart: int
    # length of the local algebra of (F, dF) at the point
    multiplicity: int
    at_infinity: bool


@dataclass
class FiberSingularities:
    t_value: object
    points: list[SingularPoint]
    complete: bool
    quotient_dims: dict
    diagnostics: list[str] = field(default_factory=list)

    def infinity_points(self) -> list[SingularPoint]:
        return [p for p in self.points if p.at_infinity]


def fiber_singularities(c: GraphCompactification, t_value, base_locus_only: bool = False) -> FiberSingularities:
    """Singular points of the fibre over t_value (a rational number or GENERIC), chart by chart.

    Points are found by lex Groebner bases and exact roots.  The local lengths
    of the found points are compared with the quotient dimension of each
    chart; a shortfall means some singular points have irrational coordinates
    and is reported with ``complete = False``.
    """
    Fx = c.fiber(t_value)
    points, dims, diags = [], {}, []
    complete = True
    for j in range(c.nx):
        eqs = _singular_equations(c, Fx, j, pin=True, base_locus=base_locus_only)
        try:
            pts, dim = solve_zero_dimensional(eqs)
        except PositiveDimensional as exc:
            raise PositiveDimensionalSingularLocus(
                f"singular locus of the fibre t={t_value} in chart X{j} is not finite ({exc})") from None
        dims[j] = dim
        total = 0
        for pt in pts:
            mult = local_multiplicity(eqs, pt)
            total += mult
            coords = _lift_point(pt, j)
            points.append(SingularPoint(coords, j, int(mult), c.in_base_locus(coords)))
        if total != dim:
            complete = False
            diags.append(f"NotRational: chart X{j} has {dim - total} singular point(s) (with multiplicity) "
                         "without coordinates in the base field")
    return FiberSingularities(t_value, points, complete, dims, diags)


# Milnor numbers and vanishing cycles ----------------------------------------------------


def milnor_number(g: LaurentPoly, point: Sequence, method: str = "truncation") -> int:
    """Local Milnor number of g at a point (g need not vanish there)."""
    mu = local_multiplicity([g.diff(i) for i in range(g.nvars)], point, method)
    if mu == INFINITE:
        raise NotIsolated(f"non-isolated critical point of {g} at {tuple(map(str, point))}")
    return int(mu)


@dataclass(frozen=True)
class Branch:
    coords: tuple
    mu: int


@dataclass(frozen=True)
class MilnorReport:
    point: tuple
    t_value: Fraction
    chart: int
    mu_special: int
    mu_generic: int
    nu: int
    branches: tuple[Branch, ...] = ()
    branch_sum_supplied: bool = False
    # (t sample, Milnor sum of the branches specialized at that t)
    sanity: tuple[tuple[Fraction, int], ...] = ()

    @property
    def sanity_ok(self) -> bool:
        return all(m == self.mu_generic for _, m in self.sanity)

    def to_dict(self) -> dict:
        return {
            "point": [str(x) for x in self.point],
            "t": str(self.t_value),
            "chart": self.chart,
            "mu_special": self.mu_special,
            "mu_generic": self.mu_generic,
            "nu": self.nu,
            "branches": [{"coords": [str(x) for x in b.coords], "mu": b.mu} for b in self.branches],
            "branch_sum_supplied": self.branch_sum_supplied,
            "sanity": [[str(s), m] for s, m in self.sanity],
        }


def _generic_branches(c: GraphCompactification, j: int) -> list[tuple]:
    """Singular points over Q(t) of the generic fibre in chart X_j (all of them)."""
    eqs = _singular_equations(c, c.fiber(GENERIC), j, pin=False, base_locus=False)
    try:
        pts, dim = solve_zero_dimensional(eqs)
    except PositiveDimensional as exc:
        raise PositiveDimensionalSingularLocus(f"generic fibre, chart X{j}: {exc}") from None
    total = sum(local_multiplicity(eqs, p) for p in pts)
    if total != dim:
        raise NotRational(f"generic fibre, chart X{j}: singular points outside Q(t)")
    return pts


def nu_at_point(c: GraphCompactification, point: Sequence, a, branch_sum: Optional[int] = None,
                chart: Optional[int] = None, samples: int = 3, seed: int = 0) -> MilnorReport:
    """nu = mu_special - mu_generic at a singular point of the fibre over t = a.

    mu_generic is the Milnor number summed over the singular points of the
    generic fibre (over Q(t)) that specialize to the point at t = a, unless the
    caller passes ``branch_sum``.  For a line {p} x C this is the Milnor number
    at p itself.  A few random rational t values re-check the sum.
    """
    a = Fraction(a)
    coords = tuple(Fraction(x) for x in point)
    j = chart if chart is not None else next(i for i, x in enumerate(coords) if x != 0)
    if coords[j] == 0:
        raise ValueError(f"chart X{j} does not contain the point")
    coords = tuple(x / coords[j] for x in coords)
    affine = coords[:j] + coords[j + 1:]
    local = _chart(c.fiber(a), j)
    if local.evaluate(affine) != 0:
        raise ValueError(f"point {coords} is not on the fibre t={a}")
    mu_special = milnor_number(local, affine)
    branches: list[Branch] = []
    sanity = []
    if branch_sum is None:
        gen_local = _chart(c.fiber(GENERIC), j)
        for b in _generic_branches(c, j):
            if specialize_point(b, a) == affine:
                branches.append(Branch(b, milnor_number(gen_local, b)))
        mu_generic = sum(b.mu for b in branches)
        rng = random.Random(seed)
        while len(sanity) < samples:
            s = Fraction(rng.randint(-997, 997), rng.randint(1, 89))
            if s == a:
                continue
            spec = [specialize_point(b.coords, s) for b in branches]
            if any(x is None for x in spec):
                continue
            loc_s = _chart(c.fiber(s), j)
            sanity.append((s, sum(milnor_number(loc_s, x) for x in spec)))
    else:
        mu_generic = int(branch_sum)
    return MilnorReport(coords, a, j, mu_special, mu_generic, mu_special - mu_generic,
                        tuple(branches), branch_sum is not None, tuple(sanity))


# rank formulas --------------------------------------------------------------------------


def torus_betti(m: int) -> list[int]:
    return [comb(m, k) for k in range(m + 1)]


def affine_betti(m: int) -> list[int]:
    return [1] + [0] * m


def rank_formulas(mu: int, nu: int, betti: Sequence[int], dimU: int) -> tuple[int, int]:
    """(rank G, rank M) = (mu + nu, mu + nu + h^{n-1}(U) - h^n(U))."""
    if len(betti) != dimU + 1:
        raise ValueError(f"need {dimU + 1} Betti numbers, got {len(betti)}")
    rank_G = mu + nu
    rank_M = rank_G + (betti[dimU - 1] if dimU >= 1 else 0) - betti[dimU]
    return rank_G, rank_M


def typicality(mu_a: int, nu_a: int) -> bool:
    return mu_a == 0 and nu_a == 0


# the conjecture on GHV models -----------------------------------------------------------


@dataclass
class ConjectureReport:
    status: str
    weights: WeightSystem
    mu: int
    predicted_nu: int
    nu: Optional[int]
    q: Optional[Fraction]
    candidates: list
    contributions: list[MilnorReport]
    diagnostics: list[str]

    @property
    def rank_G(self) -> Optional[int]:
        return None if self.nu is None else self.mu + self.nu

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "weights": list(self.weights.weights),
            "degree": self.weights.degree,
            "mu": self.mu,
            "predicted_nu": self.predicted_nu,
            "nu": self.nu,
            "rank_G": self.rank_G,
            "q": None if self.q is None else str(self.q),
            "candidates": [str(x) for x in self.candidates],
            "contributions": [r.to_dict() for r in self.contributions],
            "diagnostics": list(self.diagnostics),
        }


GRAPH_ONLY = ("only the graph compactification is tested; an inconclusive or negative outcome "
              "says nothing about other compactifications")


def _perfect_power_root(x: Fraction, k: int) -> Optional[Fraction]:
    roots = [r for r in rational_roots(UPoly([-x] + [Fraction(0)] * (k - 1) + [Fraction(1)], "z")) if r > 0]
    return roots[0] if roots else None


def choose_q(m: GHVModel, max_q: int = 64) -> Optional[Fraction]:
    """Smallest positive integer q making the critical values of f_q rational."""
    mu = m.mu
    for q in range(1, max_q + 1):
        rad = Fraction(mu) ** mu * m.radicand().specialize(1) * q
        if _perfect_power_root(rad, mu) is not None:
            return Fraction(q)
    return None


def _x_form_numerator(m: GHVModel, f: LaurentPoly) -> LaurentPoly:
    S = LaurentPoly.const(1, f.vars)
    for i in range(m.r, len(f.vars)):
        S = S + LaurentPoly.gen(f.vars[i], f.vars)
    return S


def critical_value_polynomial(m: GHVModel, f: LaurentPoly) -> UPoly:
    """Characteristic polynomial of multiplication by f on the Jacobian ring of its isolated critical points."""
    gens = [f.xi(i) for i in range(f.nvars)]
    G = GroebnerBasis(gens, saturate=_x_form_numerator(m, f))
    mu = G.dimension()
    std = G.standard_monomials()
    cols = [G.coordinates(LaurentPoly.monomial(e, f.vars) * f) for e in std]
    M = [[cols[j][i] for j in range(mu)] for i in range(mu)]
    return charpoly(M, "z")


def eps_symmetric(m: GHVModel, f: LaurentPoly) -> bool:
    """Every term has its first r exponents summing to 1 modulo mu."""
    return all(sum(e[: m.r]) % m.mu == 1 % m.mu for e in f.terms)


def conjecture_check(w: WeightSystem, max_q: int = 64) -> ConjectureReport:
    rep = analyze(w)
    if not (rep.smooth and all(rep.theorem_conditions) and not rep.linear_cone and rep.classification == "Fano"):
        raise ValueError(f"{w} does not satisfy the smoothness conditions of the conjecture")
    m = build_model(w)
    predicted = w.n + w.degree - w.total
    diags = [GRAPH_ONLY]

    def done(status, nu=None, q=None, cands=(), contrib=()):
        return ConjectureReport(status, w, m.mu, predicted, nu, q, list(cands), list(contrib), diags)

    q = choose_q(m, max_q)
    if q is None:
        diags.append(f"no q <= {max_q} makes the critical values rational")
        return done("inconclusive")
    f = m.f_at_q(q)
    cp = critical_value_polynomial(m, f)
    crit = rational_roots(cp)
    covered = len(crit) == cp.degree
    if not covered:
        c0 = crit[0] if crit else None
        orbit = c0 is not None and cp == UPoly([-c0 ** m.mu] + [Fraction(0)] * (m.mu - 1) + [Fraction(1)], "z")
        if orbit and eps_symmetric(m, f):
            diags.append(f"critical values are c*eps^k with c = {c0}; the non-rational ones are "
                         "images of c under the eps-symmetry, which preserves nu")
        else:
            diags.append(f"non-rational critical values: characteristic polynomial {cp}")
            return done("inconclusive", q=q)
    cands = sorted({Fraction(0)} | set(crit))
    c = homogenize_graph(f)
    contrib = []
    for a in cands:
        try:
            fs = fiber_singularities(c, a, base_locus_only=True)
        except PositiveDimensionalSingularLocus as exc:
            diags.append(str(exc))
            return done("inconclusive", q=q, cands=cands, contrib=contrib)
        if not fs.complete:
            diags.extend(fs.diagnostics)
            return done("inconclusive", q=q, cands=cands, contrib=contrib)
        for p in fs.points:
            try:
                contrib.append(nu_at_point(c, p.coords, a))
            except (NotRational, NotIsolated, PositiveDimensionalSingularLocus) as exc:
                diags.append(f"t={a}, point {p.coords}: {type(exc).__name__}: {exc}")
                return done("inconclusive", q=q, cands=cands, contrib=contrib)
    nu = sum(r.nu for r in contrib)
    status = "verified" if nu == predicted else "refuted"
    return done(status, nu=nu, q=q, cands=cands, contrib=contrib)


# T-infinity witnesses -------------------------------------------------------------------


@dataclass(frozen=True)
class TInftyReport:
    target: Fraction
    gradient_terms: tuple[Fraction, ...]
    value_gaps: tuple[Fraction, ...]
    tol: Fraction

    @property
    def gradient_small(self) -> bool:
        return self.gradient_terms[-1] <= self.tol

    @property
    def value_close(self) -> bool:
        return self.value_gaps[-1] <= self.tol

    @property
    def supports_membership(self) -> bool:
        return self.gradient_small and self.value_close

    def to_dict(self) -> dict:
        return {
            "target": str(self.target),
            "tol": str(self.tol),
            "gradient_terms": [str(x) for x in self.gradient_terms],
            "value_gaps": [str(x) for x in self.value_gaps],
            "supports_membership": self.supports_membership,
        }


def tinfty_witness(f: LaurentPoly, path: Sequence, c, samples: int, tol, start: int = 1) -> TInftyReport:
    """||u(p) grad f(u(p))||_1 and |f(u(p)) - c| at p = start..start+samples-1.

    ``path`` holds one entry per variable: a RatFunc in p or a rational constant.
    """
    if len(path) != f.nvars:
        raise ValueError(f"path has {len(path)} components for {f.nvars} variables")
    f = _rational_coeffs(f)
    c, tol = Fraction(c), Fraction(tol)
    xi = [f.xi(i) for i in range(f.nvars)]
    grads, gaps = [], []
    for p in range(start, start + samples):
        try:
            u = [x.specialize(p) if isinstance(x, RatFunc) else Fraction(x) for x in path]
            g = sum((abs(d.evaluate(u)) for d in xi), Fraction(0))
            v = f.evaluate(u)
        except (SpecializationError, ZeroDivisionError) as exc:
            raise PathHitsPole(f"path meets a pole at p = {p}: {exc}") from None
        grads.append(g)
        gaps.append(abs(v - c))
    return TInftyReport(c, tuple(grads), tuple(gaps), tol)


def hypersurface_model(n: int, d: int, q=1) -> LaurentPoly:
    """u_1 + .. + u_{n-d} + (u_{n-d+1} + .. + u_{n-1} + q)^d / (u_1 .. u_{n-1})."""
    m = build_model(WeightSystem((1,) * (n + 1), d))
    return m.f_param().map_coeffs(lambda c: c.specialize(q) if isinstance(c, RatFunc) else c)


def escape_path(n: int, d: int, q=1) -> list:
    """A path to infinity along which the model tends to 0 with u * grad f -> 0."""
    p = RatFunc.gen("p")
    q = Fraction(q)
    return [1 / p] * (n - d) + [1 / p ** (n - d + 1) - q / (d - 1)] * (d - 1)


__all__ = [
    "GENERIC", "Branch", "ConjectureReport", "DegreeViolation", "FiberSingularities", "GraphCompactification",
    "MilnorReport", "NonMonomialDenominator", "NotIsolated", "NotRational", "PathHitsPole",
    "PositiveDimensionalSingularLocus", "SingularPoint", "TInftyReport", "affine_betti", "choose_q",
    "conjecture_check", "critical_value_polynomial", "fiber_singularities", "homogenize_graph",
    "hypersurface_model", "escape_path", "milnor_number", "normalize_point", "nu_at_point", "rank_formulas",
    "tinfty_witness", "torus_betti", "typicality",
]
