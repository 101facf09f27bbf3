from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_sympy
from ghvmirror.algebra import LaurentPoly, RatFunc
from ghvmirror.gauss_manin import (BasisNotIndependent, BasisSpec, Frame, GMContext, NonStabilizing,
                                   basic_example_context, basic_example_verify, birkhoff_quadric_verify,
                                   combination, euler_check, gm_reduce, in_relation_module, model_context,
                                   quadric_basis, replay)
from ghvmirror.ghv import build_model, log_jacobian_basis
from ghvmirror.wps import WeightSystem


@lru_cache(maxsize=None)
def birkhoff(n):
    return birkhoff_quadric_verify(n, check_euler=False)


def sym_matrix(M):
    return sp.Matrix([[to_sympy(x) for x in row] for row in M])


def test_quadric_P3_matrices_as_printed():
    q = sp.Symbol("q")
    pair = birkhoff(3).pair
    assert sym_matrix(pair.A0) == sp.Matrix([[0, 4 * q, 0], [2, 0, 4 * q], [0, 2, 0]])
    assert sym_matrix(pair.A1) == sp.diag(0, 1, 2)
    assert sym_matrix(pair.Omega0) == -sym_matrix(pair.A0) / 2
    assert sym_matrix(pair.Omega1) == sp.zeros(3, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_birkhoff_checks(n):
    rep = birkhoff(n)
    assert rep.ok, {k: v for k, v in rep.checks().items() if not v}


@pytest.mark.parametrize("n", [3, 4])
def test_charpoly_against_sympy(n):
    rep = birkhoff(n)
    z, q = sp.symbols("zeta q")
    cp = sym_matrix(rep.pair.A0).charpoly(z).as_expr()
    assert sp.expand(cp - (z ** n - 4 * (n - 1) ** (n - 1) * q * z)) == 0
    ours = to_sympy(rep.charpoly)
    (var,) = ours.free_symbols - {q}
    assert sp.expand(ours.subs(var, z) - cp) == 0


@pytest.mark.parametrize("n", [3, 4])
def test_printed_annihilator_coefficient_fails(n):
    # the corrected coefficient 4 (n-1)^(n-1) is what annihilator_holds uses
    rep = birkhoff(n)
    assert rep.annihilator_holds
    assert rep.printed_annihilator_holds is False


def test_euler_relation_on_eps0():
    m = build_model(WeightSystem((1, 1, 1, 1), 2))
    assert euler_check(m, (0, 0)).holds


def quadric_context():
    m = build_model(WeightSystem((1, 1, 1, 1), 2))
    ctx = model_context(m)
    return m, ctx, quadric_basis(ctx, 3)


def test_f_squared_in_eps_basis():
    m, ctx, basis = quadric_context()
    s = ctx.section(ctx.f * ctx.f)
    red = gm_reduce(ctx, s, basis)
    assert [str(c) for c in red.coordinates] == ["8*q", "2*T", "4"]
    assert replay(ctx, s, basis, red).is_zero()
    # at theta = 0 this is 8q + 4 * 2 u2, which is 16q in the Jacobian ring
    G = log_jacobian_basis(m)
    u1, u2 = LaurentPoly.gens(G.vars)
    Q = RatFunc.gen("Q")
    image = LaurentPoly.const(Q * 8, G.vars) + u2.scale(8)
    assert G.normal_form(image) == LaurentPoly.const(Q * 16, G.vars)


def expected_basic_coefficient(a, b):
    """[x^a y^b] = C(a, b) tau^(b-a) [dx^dy] for f = y(xy - 1), from the two relations
    [x^a y^(b+2)] = a tau [x^(a-1) y^b] and 2[x^(a+1) y^(b+1)] - [x^a y^b] = b tau [x^a y^(b-1)]."""
    if b >= 2:
        return Fraction(0) if a == 0 else a * expected_basic_coefficient(a - 1, b - 2)
    c0 = Fraction(1)
    for k in range(a):
        c0 /= 2 * (2 * k + 3)
    return c0 if b == 0 else (2 * a + 1) * c0


def test_basic_example():
    rep = basic_example_verify(5)
    assert rep.ok, {k: v for k, v in rep.checks().items() if not v}
    for (a, b), c in rep.coefficients.items():
        assert c == expected_basic_coefficient(a, b), (a, b)


def test_basic_example_recursion_is_consistent():
    # the two relations overlap at x^(a+1) y^(b+3); both routes must agree
    for a in range(5):
        for b in range(5):
            lhs = 2 * expected_basic_coefficient(a + 1, b + 1) - expected_basic_coefficient(a, b)
            rhs = b * expected_basic_coefficient(a, b - 1) if b else Fraction(0)
            assert lhs == rhs


monomials = st.tuples(st.integers(0, 3), st.integers(0, 3))


@given(st.dictionaries(monomials, st.fractions(max_denominator=5).filter(bool), min_size=1, max_size=3),
       st.integers(-1, 1))
@settings(max_examples=25, deadline=None)
def test_basic_example_reduction_replays(terms, level):
    ctx = basic_example_context()
    basis = BasisSpec((ctx.section(1),))
    s = ctx.section(LaurentPoly(ctx.vars, terms), level)
    red = gm_reduce(ctx, s, basis)
    assert replay(ctx, s, basis, red).is_zero()
    expected: dict = {}
    for (a, b), c in terms.items():
        k = (b - a + level,)
        expected[k] = expected.get(k, 0) + c * expected_basic_coefficient(a, b)
    assert red.coordinates[0].terms == {k: v for k, v in expected.items() if v}


def test_combination_inverts_reduction():
    m, ctx, basis = quadric_context()
    u1 = LaurentPoly.gen("u1", ctx.vars)
    s = ctx.section(u1 * ctx.f)
    red = gm_reduce(ctx, s, basis)
    rebuilt = combination(ctx, red.coordinates, basis)
    assert in_relation_module(ctx, s - rebuilt) is not None


def test_dependent_basis_is_rejected():
    ctx = basic_example_context()
    xy = LaurentPoly.monomial((1, 1), ctx.vars)
    with pytest.raises(BasisNotIndependent):
        gm_reduce(ctx, ctx.section(1), BasisSpec((ctx.section(1), ctx.section(xy))))


def test_small_box_does_not_stabilize():
    ctx = basic_example_context()
    x4 = LaurentPoly.monomial((4, 0), ctx.vars)
    with pytest.raises(NonStabilizing):
        gm_reduce(ctx, ctx.section(x4), BasisSpec((ctx.section(1),)), max_depth=1, max_margin=0)


def test_context_validation():
    f = LaurentPoly(("q", "x"), {(1, 1): Fraction(1), (0, -1): Fraction(1)})
    with pytest.raises(ValueError):
        GMContext(f, Frame.TORUS, "q")
    with pytest.raises(ValueError):
        GMContext(f, Frame.TORUS, None, (Fraction(1), Fraction(1)))
