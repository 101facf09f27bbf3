from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from ghvmirror.algebra import LaurentPoly, RatFunc, UPoly


def sym(name: str) -> sp.Symbol:
    return sp.Symbol(name)


def to_sympy(x):
    """Independent sympy image of a kernel object."""
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sp.Integer(x)
    if isinstance(x, UPoly):
        v = sym(x.var)
        return sp.Add(*[to_sympy(c) * v ** k for k, c in enumerate(x.coeffs)])
    if isinstance(x, RatFunc):
        return to_sympy(x.num) / to_sympy(x.den)
    if isinstance(x, LaurentPoly):
        gens = [sym(v) for v in x.vars]
        out = sp.Integer(0)
        for e, c in x.terms.items():
            out += to_sympy(c) * sp.Mul(*[g ** a for g, a in zip(gens, e)])
        return out
    raise TypeError(type(x))


def same(a, b) -> bool:
    return sp.simplify(sp.expand(a - b)) == 0


fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
small_fractions = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 2))


@st.composite
def laurent_polys(draw, vars=("x", "y"), lo=-2, hi=3, max_terms=4, laurent=True):
    n = len(vars)
    low = lo if laurent else 0
    exps = draw(st.lists(st.tuples(*[st.integers(low, hi)] * n), max_size=max_terms))
    coeffs = draw(st.lists(fractions, min_size=len(exps), max_size=len(exps)))
    return LaurentPoly(vars, dict(zip(exps, coeffs)))


@st.composite
def upolys(draw, var="t", max_degree=4):
    coeffs = draw(st.lists(fractions, min_size=1, max_size=max_degree + 1))
    return UPoly(coeffs, var)
