"""Roots of univariate polynomials in Q and Q(t), and triangular solving.

Roots in Q(t) are found by lifting a simple rational root of a good
specialization to a power series, then recovering a rational function by
Pade approximation.  Every candidate is checked by exact substitution, so a
returned root is always a root; a missing one shows up as an incomplete count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .groebner import GroebnerBasis, NonFiniteQuotient
from .laurent import LaurentPoly
from .local import INFINITE, local_colength, local_dimension
from .matrix import row_echelon
from .orders import MonomialOrder
from .ratfunc import RatFunc, SpecializationError
from .upoly import UPoly, rational_roots


class PositiveDimensional(ArithmeticError):
    pass


def _is_ratfunc_poly(p: UPoly) -> Optional[str]:
    for c in p.coeffs:
        if isinstance(c, RatFunc):
            return c.var
    return None


# power series in s = t - t0, truncated lists of Fractions

def _series_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _series_inv(a: list, n: int) -> list:
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        acc = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -acc * out[0]
    return out


def _series_of(c, t0: Fraction, n: int) -> list:
    if not isinstance(c, RatFunc):
        return [Fraction(c)] + [Fraction(0)] * (n - 1)
    num = list(c.num.compose_shift(t0).coeffs) + [Fraction(0)] * n
    den = list(c.den.compose_shift(t0).coeffs) + [Fraction(0)] * n
    return _series_mul(num[:n], _series_inv(den[:n], n), n)


def _lift(coeff_series: list[list], y0: Fraction, dcoeff: Fraction, n: int) -> list:
    """Power series root y(s) with y(0) = y0 of sum_k c_k(s) y^k, simple at s = 0."""
    y = [y0] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        # value of the polynomial at the current truncation, coefficient of s^k
        acc = [Fraction(0)] * (k + 1)
        for c in reversed(coeff_series):
            acc = _series_mul(acc, y, k + 1)
            for i in range(k + 1):
                acc[i] += c[i]
        y[k] = -acc[k] / dcoeff
    return y


def _pade(y: list, deg: int) -> Optional[tuple[list, list]]:
    """A, B of degree <= deg with B*y - A = O(s^(2 deg + 2))."""
    n = 2 * deg + 2
    rows = []
    # unknowns: A_0..A_deg, B_0..B_deg
    for k in range(n):
        row = [Fraction(-1) if i == k else Fraction(0) for i in range(deg + 1)]
        row += [y[k - j] if 0 <= k - j < len(y) else Fraction(0) for j in range(deg + 1)]
        rows.append(row)
    R, pivots = row_echelon(rows)
    free = [j for j in range(2 * deg + 2) if j not in pivots]
    if not free:
        return None
    v = [Fraction(0)] * (2 * deg + 2)
    v[free[0]] = Fraction(1)
    for r, pc in zip(R, pivots):
        v[pc] = -sum((r[j] * v[j] for j in free), Fraction(0)) / r[pc]
    return v[: deg + 1], v[deg + 1:]


def ratfunc_roots(p: UPoly, max_degree: Optional[int] = None) -> list[RatFunc]:
    """Distinct roots in Q(t) of a polynomial with coefficients in Q(t)."""
    var = _is_ratfunc_poly(p) or "t"
    if p.is_zero():
        raise ValueError("every element is a root of the zero polynomial")
    if p.degree <= 0:
        return []
    sq = p // p.gcd(p.derivative())
    cs = [c if isinstance(c, RatFunc) else RatFunc(c, var=var) for c in sq.coeffs]
    # a root a/b of the cleared polynomial has deg a, deg b bounded by its t-degree
    den = UPoly((Fraction(1),), var)
    for c in cs:
        den = den * c.den // den.gcd(c.den)
    cleared = [RatFunc(c.num * (den // c.den), var=var) for c in cs]
    bound = max(c.num.degree for c in cleared if c)
    bound = bound if max_degree is None else min(bound, max_degree)
    t0 = _good_point(cleared, var)
    n = 2 * bound + 2
    series = [_series_of(c, t0, n) for c in cleared]
    spec = UPoly([c.specialize(t0) for c in cleared], var)
    dspec = spec.derivative()
    found: list[RatFunc] = []
    poly = UPoly(cleared, sq.var)
    for y0 in rational_roots(spec):
        y = _lift(series, y0, dspec(y0), n)
        for deg in range(bound + 1):
            ab = _pade(y, deg)
            if ab is None:
                continue
            A, B = (UPoly(v, var).compose_shift(-t0) for v in ab)
            if B.is_zero():
                continue
            r = RatFunc(A, B, var)
            if poly(r) == 0:
                found.append(r)
                break
    return _dedupe(found)


def _dedupe(xs: list) -> list:
    out = []
    for x in xs:
        if not any(x == y for y in out):
            out.append(x)
    return out


def _good_point(cleared: list[RatFunc], var: str) -> Fraction:
    """A rational t0 where the specialization keeps its degree and stays squarefree."""
    k = 0
    while True:
        t0 = Fraction((k + 1) // 2 * (1 if k % 2 else -1)) + Fraction(1, 3)
        k += 1
        spec = UPoly([c.specialize(t0) for c in cleared], var)
        if spec.degree != len(cleared) - 1:
            continue
        if spec.gcd(spec.derivative()).degree == 0:
            return t0


def field_roots(p: UPoly) -> list:
    """Distinct roots of p in its coefficient field (Q or Q(t))."""
    if _is_ratfunc_poly(p):
        return ratfunc_roots(p)
    return rational_roots(UPoly([Fraction(c) for c in p.coeffs], p.var))


# triangular solving ------------------------------------------------------------


def _univariate(g: LaurentPoly, i: int) -> Optional[UPoly]:
    """g as a polynomial in its i-th variable, if it involves no other variable."""
    if any(a for e in g.terms for j, a in enumerate(e) if j != i):
        return None
    deg = max(e[i] for e in g.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in g.terms.items():
        coeffs[e[i]] = c
    return UPoly(coeffs, g.vars[i])


def solve_zero_dimensional(polys: Sequence[LaurentPoly]) -> tuple[list[tuple], int]:
    """Points of V(polys) with coordinates in the coefficient field, and dim of the quotient.

    Raises PositiveDimensional when the quotient is infinite.
    """
    polys = [p for p in polys if p]
    if not polys:
        raise PositiveDimensional("no equations")
    vars = polys[0].vars
    G = GroebnerBasis(polys, order=MonomialOrder.lex())
    if G.is_unit_ideal():
        return [], 0
    try:
        dim = G.dimension()
    except NonFiniteQuotient as exc:
        raise PositiveDimensional(str(exc)) from None
    return _back_substitute(G.basis, vars), dim


def _back_substitute(basis: list[LaurentPoly], vars: tuple) -> list[tuple]:
    k = len(vars)
    last = k - 1
    g = next((u for u in (_univariate(b, last) for b in basis) if u is not None), None)
    if g is None:
        raise PositiveDimensional(f"no univariate element in {vars[last]}")
    points = []
    for r in field_roots(g):
        if k == 1:
            if all(b.evaluate([r]) == 0 for b in basis):
                points.append((r,))
            continue
        rest = vars[:last]
        sub = [b.subs({vars[last]: r}, new_vars=vars).terms for b in basis]
        # drop the substituted variable
        reduced = []
        bad = False
        for terms in sub:
            p = LaurentPoly(rest, {e[:last]: c for e, c in terms.items()})
            if p.is_constant() and p:
                bad = True
                break
            if p:
                reduced.append(p)
        if bad:
            continue
        if not reduced:
            raise PositiveDimensional("fiber over a root is not finite")
        G = GroebnerBasis(reduced, order=MonomialOrder.lex())
        if G.is_unit_ideal():
            continue
        for head in _back_substitute(G.basis, rest):
            points.append(head + (r,))
    return points


def translate(p: LaurentPoly, point: Sequence) -> LaurentPoly:
    """p(x + point)."""
    X = LaurentPoly.gens(p.vars)
    return p.subs({v: X[i] + point[i] for i, v in enumerate(p.vars)})


def local_multiplicity(polys: Sequence[LaurentPoly], point: Sequence, method: str = "truncation") -> float:
    """Dimension of the local algebra of the ideal at the point (INFINITE if not isolated).

    ``method`` is "truncation" (linear algebra on I + m^N) or "mora" (local
    standard basis); both are exact, the first is much faster over Q(t).
    """
    moved = [translate(p, point) for p in polys if p]
    if any(m.constant_coeff() != 0 for m in moved):
        return 0
    if method == "mora":
        return local_dimension(moved)
    if method != "truncation":
        raise ValueError(f"unknown method {method!r}")
    return local_colength(moved)


def specialize_point(point: Sequence, value) -> Optional[tuple]:
    """Evaluate Q(t) coordinates at t = value; None at a pole."""
    out = []
    for c in point:
        if isinstance(c, RatFunc):
            try:
                out.append(c.specialize(value))
            except SpecializationError:
                return None
        else:
            out.append(Fraction(c))
    return tuple(out)


__all__ = ["INFINITE", "PositiveDimensional", "field_roots", "local_multiplicity", "ratfunc_roots",
           "solve_zero_dimensional", "specialize_point", "translate"]
