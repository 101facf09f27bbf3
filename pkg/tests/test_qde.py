from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_sympy
from ghvmirror.algebra import RatFunc, UPoly
from ghvmirror.qde import (DOperator, NonDivisibleWeights, build_PH, linear, reduce_PH, theta0_relation,
                           v_counts)
from ghvmirror.wps import WeightSystem

s_, T_ = sp.symbols("s T")


def act(op: DOperator) -> dict:
    """Image of q^s: {shift b: coefficient in (s, T)}, with D = T q d/dq so D q^s = T s q^s.

    The term T^a D^e q^b multiplies by q^b first.
    """
    out: dict = {}
    for (a, e, b), c in op.terms.items():
        out[b] = out.get(b, 0) + to_sympy(Fraction(c)) * T_ ** a * (T_ * (s_ + b)) ** e
    return {b: sp.expand(v) for b, v in out.items() if sp.expand(v) != 0}


def compose(A: DOperator, image: dict) -> dict:
    out: dict = {}
    for b, poly in image.items():
        for (a, e, b2), c in A.terms.items():
            val = to_sympy(Fraction(c)) * T_ ** a * (T_ * (s_ + b + b2)) ** e * poly
            out[b + b2] = out.get(b + b2, 0) + val
    return {b: sp.expand(v) for b, v in out.items() if sp.expand(v) != 0}


@st.composite
def operators(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 3), st.integers(-1, 2)),
                                 st.integers(-5, 5), max_size=4))
    return DOperator(terms)


@given(operators(), operators())
def test_product_matches_composition_of_actions(A, B):
    assert act(A * B) == compose(A, act(B))


@given(operators(), operators(), operators())
def test_product_is_associative(A, B, C):
    assert (A * B) * C == A * (B * C)


def test_commutation_witness():
    D, q = DOperator.D(), DOperator.q()
    assert D * q == q * (D + DOperator.theta())
    assert (D * q) * q == D * (q * q)


def test_quadric_P3_operator():
    w = WeightSystem((1, 1, 1, 1), 2)
    P = build_PH(w)
    assert str(P) == "D^4 - 2*D*(2*D - T)*q"
    red = reduce_PH(P, w)
    assert str(red.reduced) == "D^3 - 2*(2*D - T)*q"
    assert red.rank == 3


def test_build_PH_raw_form():
    # before moving q right: prod (w_i D - k T) - q prod_{k=1..d} (d D + k T)
    w = WeightSystem((1, 1, 2, 3), 6)
    P = build_PH(w).expand()
    raw = DOperator.const(1)
    for wi in w.weights:
        for k in range(wi):
            raw = raw * linear(wi, k)
    right = DOperator.q()
    for k in range(1, w.degree + 1):
        right = right * linear(w.degree, -k)
    assert P == raw - right


@pytest.mark.parametrize("w,d,v,rank", [((1, 1, 2, 3), 6, (0, 0, 1, 2), 3), ((1, 1, 1, 1), 3, (0, 0, 0, 0), 3),
                                        ((1, 1, 1, 1, 1), 2, (0,) * 5, 4), ((1, 1, 1, 2), 4, (0, 0, 0, 1), 3)])
def test_v_counts_and_rank(w, d, v, rank):
    ws = WeightSystem(w, d)
    red = reduce_PH(build_PH(ws), ws)
    assert red.v == v
    assert red.rank == rank == ws.total - 1 - sum(v)


def test_non_divisible():
    with pytest.raises(NonDivisibleWeights):
        v_counts(WeightSystem((1, 1, 2, 3), 7))


def _theorem_systems(max_n=6, max_d=12):
    out = []
    for size in range(0, max_n + 2):
        for combo in combinations(range(2, max_d), size):
            if any(gcd(a, b) != 1 for a, b in combinations(combo, 2)):
                continue
            L = lcm(*combo) if combo else 1
            for ones in range(max(0, 3 - size), max_n + 2 - size):
                for d in range(L, max_d + 1, L):
                    w = WeightSystem((1,) * ones + combo, d)
                    if w.is_normalized() and all(w.theorem_conditions()):
                        out.append(w)
    return out


def test_rank_is_n_and_cancellation_bookkeeping_sweep():
    systems = _theorem_systems()
    assert len(systems) > 100
    for w in systems:
        P = build_PH(w)
        red = reduce_PH(P, w)
        assert red.rank == w.n, w
        cancelled = len(red.cancelled)
        assert cancelled == 1 + sum(red.v), w
        assert len(red.reduced.right_roots) == w.degree - 1 - sum(red.v)
        assert Counter(P.left_roots) - Counter(red.cancelled) == Counter(red.reduced.left_roots)


@pytest.mark.parametrize("w,d,c,k", [((1, 1, 1, 1), 2, 4, 1), ((1, 1, 1, 1), 3, 27, 2), ((1, 1, 2, 3), 6, 432, 2),
                                     ((1, 1, 1, 1, 1), 2, 4, 1), ((1,) * 6, 2, 4, 1)])
def test_theta0_relation(w, d, c, k):
    ws = WeightSystem(w, d)
    rel = theta0_relation(reduce_PH(build_PH(ws), ws).reduced, ws)
    z, q = sp.symbols("zeta q")
    assert sp.expand(to_sympy(rel.charpoly) - (z ** ws.n - c * q * z ** k)) == 0
    assert rel.relation_holds
    # c = d^d / prod w_i^w_i, computed independently
    assert sp.Integer(d) ** d / sp.prod([sp.Integer(x) ** x for x in w]) == c


def test_theta0_charpoly_weighted_homogeneous():
    for w in _theorem_systems(max_n=4, max_d=8):
        if w.total <= w.degree:
            continue
        rel = theta0_relation(reduce_PH(build_PH(w), w).reduced, w)
        # deg zeta = 1, deg q = w - d
        for k, c in enumerate(rel.charpoly.coeffs):
            if not c:
                continue
            qdeg = c.num.degree if isinstance(c, RatFunc) else 0
            assert k + qdeg * (w.total - w.degree) == w.n, (w, rel.charpoly)
        assert isinstance(rel.charpoly, UPoly)
