from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import pytest
import sympy as sp

from conftest import to_sympy
from ghvmirror.algebra import LaurentPoly, RatFunc
from ghvmirror.ghv import (build_model, critical_data, epsilon_symmetry, jacobian_ring_data, log_jacobian_basis,
                           verify_homogeneity)
from ghvmirror.parser import parse_expression
from ghvmirror.wps import WeightSystem, ghv_partition

MODELS = [((1, 1, 1, 1), 2), ((1, 1, 1, 1, 1), 2), ((1, 1, 1, 1, 1, 1), 2), ((1, 1, 1, 1), 3),
          ((1, 1, 2, 3), 6), ((1, 1, 1, 2), 4)]


def model(w, d):
    return build_model(WeightSystem(w, d))


def test_q_forms_at_one():
    f = model((1, 1, 1, 1), 2).f_at_q(1)
    assert f == parse_expression("x + (y+1)^2/(x*y)", vars=f.vars)
    f = model((1, 1, 1, 1, 1), 2).f_at_q(1)
    assert f == parse_expression("x + y + (z+1)^2/(x*y*z)", vars=f.vars)


def test_weighted_sextic_model():
    m = model((1, 1, 2, 3), 6)
    assert m.r == 0
    assert m.f_Q == parse_expression("(u1+u2+Q)^6/(u1*u2^2)", vars=m.f_Q.vars)


def test_cubic_model():
    m = model((1, 1, 1, 1), 3)
    assert m.f_Q == parse_expression("(u1+u2+Q)^3/(u1*u2)", vars=m.f_Q.vars)


@pytest.mark.parametrize("w,d", MODELS)
def test_homogeneity_against_sympy_euler(w, d):
    m = model(w, d)
    assert verify_homogeneity(m).holds
    f = to_sympy(m.f_Q)
    gs = [sp.Symbol(v) for v in m.f_Q.vars]
    euler = sum(to_sympy(g) * x * sp.diff(f, x) for g, x in zip(m.grading(), gs))
    assert sp.simplify(euler - f) == 0


@pytest.mark.parametrize("w,d", MODELS)
def test_q_form_is_ramified_Q_form(w, d):
    m = model(w, d)
    Q = sp.Symbol("Q")
    fq = to_sympy(m.f_q.map_coeffs(lambda c: c))
    fq = fq.subs(sp.Symbol("q"), Q ** m.wn)
    xs = [sp.Symbol(v) for v in m.f_q.vars]
    us = [sp.Symbol(v) for v in m.u_vars]
    fQ = to_sympy(m.f_Q)
    sub = {u: (x if i < m.r else Q * x) for i, (u, x) in enumerate(zip(us, xs))}
    assert sp.simplify(fQ.subs(sub) - fq) == 0


@pytest.mark.parametrize("w,d", MODELS)
def test_epsilon_symmetry_by_substitution(w, d):
    m = model(w, d)
    assert epsilon_symmetry(m)
    e = m.mu
    eps = sp.exp(2 * sp.pi * sp.I / e)
    us = [sp.Symbol(v) for v in m.u_vars]
    f = to_sympy(m.f_Q)
    lhs = f.subs({u: eps * u for u in us[: m.r]}, simultaneous=True)
    assert sp.simplify(sp.expand(lhs - eps * f)) == 0


@pytest.mark.parametrize("w,d", MODELS)
def test_critical_structure(w, d):
    m = model(w, d)
    cd = critical_data(m)
    assert cd.count == m.mu == sum(w) - d
    assert cd.gradient_vanishes and cd.values_match and cd.nondegenerate
    jd = jacobian_ring_data(m)
    assert jd.mu == m.mu and jd.power_relation_ok and jd.eigenvalues_distinct
    c = Fraction(d) ** d
    for x in w:
        c /= Fraction(x) ** x
    Q = RatFunc.gen("Q")
    assert jd.expected_power == Q ** m.wn * (c * Fraction(m.mu) ** m.mu)


@pytest.mark.parametrize("w,d,values", [((1, 1, 1, 1), 2, {4, -4}), ((1, 1, 2, 3), 6, {432}),
                                        ((1, 1, 1, 1, 1), 2, None)])
def test_critical_values_against_sympy(w, d, values):
    m = model(w, d)
    f = m.f_at_q(1)
    xs = [sp.Symbol(v) for v in f.vars]
    F = to_sympy(f)
    sols = sp.solve([sp.numer(sp.together(sp.diff(F, x))) for x in xs] + [sp.Symbol("s") * sp.prod(xs) - 1],
                    xs + [sp.Symbol("s")], dict=True)
    # r = 0 models also have the critical curve S = 0, which sympy leaves parametric
    crit = [s for s in sols if all(x in s and s[x] != 0 for x in xs)]
    assert len(crit) == m.mu
    vals = {sp.nsimplify(sp.simplify(F.subs(s))) for s in crit}
    jd = jacobian_ring_data(m)
    # eigenvalues of multiplication by f are the critical values
    z = sp.Symbol("zeta")
    cp = to_sympy(jd.charpoly).subs(sp.Symbol("Q"), 1)
    assert {sp.nsimplify(r) for r in sp.roots(sp.Poly(cp, z))} == vals
    if values is not None:
        assert vals == values
    for s in crit:
        H = sp.hessian(F, xs).subs(s)
        assert sp.simplify(H.det()) != 0


def test_quadric_jacobian_relations():
    # u_{n-1} = q and u_1 = ... = u_{n-2} in the quotient
    for n in (3, 4, 5):
        m = model((1,) * (n + 1), 2)
        G = log_jacobian_basis(m)
        f = m.f_param()
        u = LaurentPoly.gens(f.vars)
        Q = RatFunc.gen("Q")
        assert G.normal_form(u[-1] - LaurentPoly.const(Q, f.vars)).is_zero()
        for i in range(1, n - 2):
            assert G.normal_form(u[i] - u[0]).is_zero()


def test_f_squared_in_quadric_jacobian_ring():
    m = model((1, 1, 1, 1), 2)
    G = log_jacobian_basis(m)
    f = m.f_param()
    assert G.normal_form(f * f) == LaurentPoly.const(RatFunc.gen("Q") * 16, f.vars)


def _theorem_systems(max_n=5, max_d=8):
    out = []
    for size in range(0, max_n + 2):
        for combo in combinations(range(2, max_d), size):
            if any(gcd(a, b) != 1 for a, b in combinations(combo, 2)):
                continue
            L = lcm(*combo) if combo else 1
            for ones in range(max(0, 3 - size), max_n + 2 - size):
                for d in range(L, max_d + 1, L):
                    w = WeightSystem((1,) * ones + combo, d)
                    if w.is_normalized() and all(w.theorem_conditions()) and w.total > d and d not in w.weights:
                        out.append(w)
    return out


@pytest.mark.slow
def test_mu_equals_w_minus_d_sweep():
    checked = 0
    for w in _theorem_systems():
        if w.n == 5 and w.degree > 4:
            continue  # Groebner cost grows fast here; these cases took 30-140s each
        try:
            ghv_partition(w)
        except ValueError:
            continue
        m = build_model(w)
        assert jacobian_ring_data(m).mu == w.total - w.degree, w
        checked += 1
    assert checked >= 10
