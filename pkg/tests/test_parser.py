from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laurent_polys, same, to_sympy
from ghvmirror.algebra import LaurentPoly
from ghvmirror.ghv import build_model
from ghvmirror.parser import (NonIntegerExponent, NonMonomialDenominator, NotAPolynomial, ParseError,
                              parse_expression)
from ghvmirror.qde import DOperator, build_PH, reduce_PH
from ghvmirror.wps import WeightSystem


def test_quadric_p3_model_text():
    m = build_model(WeightSystem((1, 1, 1, 1), 2))
    f = m.f_at_q(1)
    assert parse_expression("x + (y+1)^2/(x*y)", vars=f.vars) == f


def test_operator_matches_reduced_qde():
    w = WeightSystem((1, 1, 1, 1), 2)
    op = parse_expression("D^3 - 2*(2*D - T)*q", "operator")
    assert op == reduce_PH(build_PH(w), w).reduced.expand()


def test_non_monomial_denominator():
    with pytest.raises(NonMonomialDenominator):
        parse_expression("(x+1)/(y+1)", "laurent")


def test_poly_target_rejects_denominators():
    with pytest.raises(NotAPolynomial):
        parse_expression("x/y", "poly")
    assert parse_expression("x/2 + y", "poly") == parse_expression("1/2*x + y", "poly")


@pytest.mark.parametrize("src,pos", [("x +* y", 3), ("(x + 1", 6), ("x)", 1), ("2 $ x", 2), ("", 0), ("1.5", 1)])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as err:
        parse_expression(src)
    assert err.value.position == pos
    assert isinstance(err.value, SyntaxError)


@pytest.mark.parametrize("src", ["x^(1/2)", "x^y", "D^(3/2)"])
def test_non_integer_exponent(src):
    target = "operator" if "D" in src else "laurent"
    with pytest.raises(NonIntegerExponent):
        parse_expression(src, target)


def test_precedence_against_sympy():
    cases = ["-x^2", "2*x^-1*y", "x - y - 1", "x/2/y", "-(x+y)^3/(x*y)", "x**2 - 3*x*y + 1/3", "2^3*x^2^1"]
    for src in cases:
        p = parse_expression(src, vars=("x", "y"))
        assert same(to_sympy(p), sp.sympify(src.replace("^", "**"))), src


def test_commutation_rule():
    # q D = (D - T) q
    assert parse_expression("q*D", "operator") == parse_expression("D*q - T*q", "operator")
    assert parse_expression("q^-1*q", "operator") == DOperator.const(1)


def test_unknown_operator_symbol():
    with pytest.raises(ParseError):
        parse_expression("D + x", "operator")


def test_parameters_become_coefficients():
    p = parse_expression("(q+1)*x/q", params=["q"])
    assert p.vars == ("x",)
    assert parse_expression(str(p), params=["q"]) == p


@given(laurent_polys(vars=("x", "y", "z")))
def test_laurent_round_trip(p):
    assert parse_expression(str(p), vars=p.vars) == p


@given(laurent_polys(vars=("x", "y"), laurent=False))
def test_poly_round_trip(p):
    assert parse_expression(str(p), "poly", vars=p.vars) == p


@st.composite
def operators(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 3), st.integers(-1, 2)),
                                 st.integers(-6, 6), max_size=4))
    return DOperator(terms)


@given(operators())
def test_operator_round_trip(op):
    assert parse_expression(str(op), "operator") == op


@given(operators(), operators())
@settings(max_examples=50)
def test_operator_product_reparses(a, b):
    src = f"({a})*({b})"
    assert parse_expression(src, "operator") == a * b


def test_model_fixtures_round_trip():
    for w, d in [((1, 1, 1, 1), 2), ((1, 1, 1, 1, 1), 2), ((1, 1, 2, 3), 6), ((1, 1, 1, 2), 4)]:
        f = build_model(WeightSystem(w, d)).f_at_q(1)
        assert parse_expression(str(f), vars=f.vars) == f
        assert isinstance(f, LaurentPoly)
