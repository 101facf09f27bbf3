from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import laurent_polys, to_sympy
from ghvmirror.algebra import LaurentPoly, RatFunc
from ghvmirror.infinity import (DegreeViolation, NotIsolated, PathHitsPole, affine_betti, conjecture_check,
                                fiber_singularities, homogenize_graph, hypersurface_model, escape_path, milnor_number,
                                nu_at_point, rank_formulas, tinfty_witness, torus_betti, typicality)
from ghvmirror.parser import parse_expression
from ghvmirror.wps import WeightSystem

BASIC = "x*y^2 - y"
QUADRIC_P3 = "x + (y+1)^2/(x*y)"
QUADRIC_P4 = "x + y + (z+1)^2/(x*y*z)"


def graph(src):
    return homogenize_graph(parse_expression(src))


def points(fs):
    return {tuple(p.coords) for p in fs.points}


def P(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.mark.parametrize("src,expected", [
    (BASIC, "X1*X2^2 - X2*X0^2 - t*X0^3"),
    (QUADRIC_P3, "X1^2*X2 - t*X0*X1*X2 + X0*(X2+X0)^2"),
    (QUADRIC_P4, "X1^2*X2*X3 + X1*X2^2*X3 + X0^2*(X3+X0)^2 - t*X0*X1*X2*X3"),
])
def test_homogenize_printed_forms(src, expected):
    c = graph(src)
    assert sp.expand(to_sympy(c.F) - sp.sympify(expected.replace("^", "**"))) == 0


@pytest.mark.parametrize("src", [BASIC, QUADRIC_P3, QUADRIC_P4, "x^3/y + y^-2", "2*x*y - 1/x"])
def test_homogenize_against_sympy(src):
    # F = X0^D P(X/X0) - t X0^(D - deg Q) Q(X), with f = P/Q
    c = graph(src)
    f = parse_expression(src)
    xs = [sp.Symbol(v) for v in f.vars]
    X = sp.symbols(f"X0:{len(xs) + 1}")
    t = sp.Symbol("t")
    num, den = sp.fraction(sp.together(to_sympy(f)))
    D = sp.Poly(num, *xs).total_degree()
    sub = {x: X[i + 1] / X[0] for i, x in enumerate(xs)}
    F = sp.expand(X[0] ** D * (num.subs(sub) - t * den.subs(sub)))
    assert sp.expand(to_sympy(c.F) - F) == 0


def test_singular_points_at_zero():
    assert points(fiber_singularities(graph(QUADRIC_P3), 0)) == {P(1, 0, -1)}
    fs = fiber_singularities(graph(QUADRIC_P4), 0)
    assert fs.complete
    assert P(1, 0, 0, -1) in points(fs)
    # every other singular point sits on X0 = 0
    assert all(p[0] == 0 for p in points(fs) - {P(1, 0, 0, -1)})


@pytest.mark.parametrize("t", [0, 5, Fraction(-3, 7)])
def test_basic_example_singular_line(t):
    assert points(fiber_singularities(graph(BASIC), t)) == {P(0, 1, 0)}


@pytest.mark.parametrize("src,point,triple", [
    (BASIC, (0, 1, 0), (3, 2, 1)),
    (QUADRIC_P3, (1, 0, -1), (1, 0, 1)),
    (QUADRIC_P4, (1, 0, 0, -1), (4, 3, 1)),
])
def test_nu_triples(src, point, triple):
    r = nu_at_point(graph(src), point, 0)
    assert (r.mu_special, r.mu_generic, r.nu) == triple
    assert r.sanity_ok


def test_local_equations_by_other_route():
    # chart equations as printed, Milnor numbers by Mora
    u, v = LaurentPoly.gens(("u", "v"))
    t = RatFunc.gen("t")
    basic0 = u * u - u * v * v
    basic_t = basic0 - (v ** 3).scale(t)
    assert milnor_number(basic0, (0, 0), "mora") == 3
    assert milnor_number(basic_t, (0, 0), "mora") == 2
    one = LaurentPoly.const(1, ("u", "v"))
    quadric = u * u * v + (one + v) * (one + v)
    assert milnor_number(quadric, (0, -1), "mora") == 1


def test_extra_QUADRIC_P4_points_carry_no_vanishing_cycles():
    c = graph(QUADRIC_P4)
    for p in points(fiber_singularities(c, 0)) - {P(1, 0, 0, -1)}:
        r = nu_at_point(c, p, 0)
        assert r.nu == 0, p


@pytest.mark.parametrize("src,point", [(BASIC, (0, 1, 0)), (QUADRIC_P3, (1, 0, -1)), (QUADRIC_P4, (1, 0, 0, -1))])
def test_nu_is_nonnegative_and_semicontinuous(src, point):
    r = nu_at_point(graph(src), point, 0)
    assert r.nu >= 0 and r.mu_generic <= r.mu_special


def test_supplied_branch_sum():
    r = nu_at_point(graph(QUADRIC_P4), (1, 0, 0, -1), 0, branch_sum=3)
    assert r.nu == 1 and r.branch_sum_supplied


@given(laurent_polys(vars=("x", "y"), laurent=False, hi=4, max_terms=4))
@settings(max_examples=30, deadline=None)
def test_milnor_routes_and_symmetries(g):
    x, y = LaurentPoly.gens(("x", "y"))
    f = g * x * x * y + x ** 3 + y ** 4
    mu = milnor_number(f, (0, 0))
    assert milnor_number(f, (0, 0), "mora") == mu
    swapped = LaurentPoly(("x", "y"), {(b, a): c for (a, b), c in f.terms.items()})
    assert milnor_number(swapped, (0, 0)) == mu
    # translation: f(x - 1, y + 2) at (1, -2)
    one = LaurentPoly.const(1, ("x", "y"))
    moved = f.subs({"x": x - one, "y": y + one.scale(2)})
    assert milnor_number(moved, (1, -2)) == mu


def test_non_isolated():
    x, y = LaurentPoly.gens(("x", "y"))
    with pytest.raises(NotIsolated):
        milnor_number(x * x, (0, 0))


def test_degree_violation():
    with pytest.raises(DegreeViolation):
        graph("1/(x*y)")


def test_rank_formulas():
    assert rank_formulas(2, 1, torus_betti(2), 2)[0] == 3
    assert rank_formulas(3, 1, torus_betti(3), 3)[0] == 4
    assert rank_formulas(0, 1, affine_betti(2), 2) == (1, 1)
    assert torus_betti(3) == [sp.binomial(3, k) for k in range(4)]
    with pytest.raises(ValueError):
        rank_formulas(1, 1, [1, 2], 2)


def test_typicality():
    assert typicality(0, 0)
    assert not typicality(0, 1)


@pytest.mark.parametrize("w,status,nu", [((1, 1, 1, 1), "verified", 1), ((1, 1, 1, 1, 1), "verified", 1)])
def test_conjecture_on_quadrics(w, status, nu):
    rep = conjecture_check(WeightSystem(w, 2))
    assert rep.status == status and rep.nu == nu == rep.predicted_nu


def test_conjecture_weighted_sextic_is_inconclusive():
    rep = conjecture_check(WeightSystem((1, 1, 2, 3), 6))
    assert rep.predicted_nu == 2
    assert rep.status == "inconclusive"
    assert rep.diagnostics


def test_tinfty_escape_path():
    f = hypersurface_model(3, 2)
    path = escape_path(3, 2)
    good = tinfty_witness(f, path, 0, samples=60, tol=Fraction(1, 10), start=2)
    assert good.supports_membership
    assert list(good.value_gaps) == sorted(good.value_gaps, reverse=True)
    bad = tinfty_witness(f, path, 1, samples=60, tol=Fraction(1, 10), start=2)
    assert not bad.supports_membership
    assert min(bad.value_gaps) > Fraction(1, 2)


def test_tinfty_constant_path_at_critical_point():
    # u1 = 2, u2 = 1 is critical for u1 + (u2 + 1)^2 / (u1 u2) with value 4
    f = hypersurface_model(3, 2)
    rep = tinfty_witness(f, [Fraction(2), Fraction(1)], 4, samples=5, tol=0)
    assert all(g == 0 for g in rep.gradient_terms)
    assert rep.supports_membership


def test_path_hits_pole():
    p = RatFunc.gen("p")
    f = hypersurface_model(3, 2)
    with pytest.raises(PathHitsPole):
        tinfty_witness(f, [1 / (p - 2), Fraction(1)], 0, samples=4, tol=1)
