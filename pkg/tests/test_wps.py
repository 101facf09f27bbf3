from __future__ import annotations

from itertools import combinations, permutations
from math import gcd, lcm

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from ghvmirror.wps import (InvalidWeights, NoPartition, NotNormalized, WeightSystem, analyze, ghv_partition,
                           normalized_systems)


@pytest.mark.parametrize("w,d", [((1, 1, 2, 3), 6), ((1, 1, 1, 1), 2), ((1, 1, 1, 1), 3), ((1, 1, 1, 2), 4)])
def test_surfaces_table(w, d):
    r = analyze(WeightSystem(w, d))
    assert r.smooth and r.general_position and not r.linear_cone
    assert r.classification == "Fano"
    assert r.fano_index == sum(w) - d


def test_named_examples():
    assert analyze(WeightSystem((1, 1, 1, 3), 3)).linear_cone
    assert analyze(WeightSystem((1, 1, 1, 1, 1), 5)).classification == "CalabiYau"
    assert analyze(WeightSystem((1, 1, 1, 1), 5)).classification == "GeneralType"
    assert analyze(WeightSystem((1, 1, 2, 3), 6)).fano_index == 1
    assert analyze(WeightSystem((1, 1, 1, 1), 2)).fano_index == 2


def test_errors():
    with pytest.raises(NotNormalized):
        analyze(WeightSystem((1, 2, 2, 2), 4))
    with pytest.raises(InvalidWeights):
        WeightSystem((1, 1), 2)
    with pytest.raises(InvalidWeights):
        WeightSystem((0, 1, 1), 2)


@pytest.mark.parametrize("w,d,r", [((1, 1, 1, 1), 2, 1), ((1, 1, 2, 3), 6, 0), ((1, 1, 1, 1, 1), 2, 2)])
def test_partition(w, d, r):
    p = ghv_partition(WeightSystem(w, d))
    assert p.r == r
    assert sum(sorted(w)[r + 1:]) == d
    assert p.ones_bound_ok


def test_no_partition():
    with pytest.raises(NoPartition):
        ghv_partition(WeightSystem((1, 1, 1, 1), 7))


@given(st.lists(st.integers(1, 9), min_size=3, max_size=6), st.integers(1, 30))
def test_prime_table_covers_exactly_relevant_primes(ws, d):
    w = WeightSystem(tuple(ws), d)
    if not w.is_normalized():
        return
    r = analyze(w)
    expected = set(sp.primefactors(d))
    for x in ws:
        expected |= set(sp.primefactors(x))
    assert {row.p for row in r.prime_table} == expected
    for row in r.prime_table:
        m = sum(1 for x in ws if x % row.p == 0)
        assert (row.m, row.k, row.q) == (m, int(d % row.p == 0), w.n - m + int(d % row.p == 0))


@given(st.lists(st.integers(1, 7), min_size=3, max_size=5), st.integers(1, 20))
def test_analyze_is_permutation_invariant(ws, d):
    w = WeightSystem(tuple(ws), d)
    if not w.is_normalized():
        return
    base = analyze(w).to_dict()
    for perm in list(permutations(ws))[:6]:
        assert analyze(WeightSystem(perm, d)).to_dict() == base


def _theorem_systems(max_n=6, max_w=12, max_d=36):
    """All (w, d) with pairwise coprime w_i | d, w_i < d, n <= max_n, w_i <= max_w, d <= max_d."""
    big = list(range(2, max_w + 1))
    out = []
    for size in range(0, max_n + 2):
        for combo in combinations(big, size):
            if any(gcd(a, b) != 1 for a, b in combinations(combo, 2)):
                continue
            L = lcm(*combo) if combo else 1
            for ones in range(max(0, 3 - size), max_n + 2 - size):
                ws = (1,) * ones + combo
                for d in range(L, max_d + 1, L):
                    w = WeightSystem(ws, d)
                    if w.is_normalized() and all(w.theorem_conditions()):
                        out.append(w)
    return out


def test_theorem_conditions_imply_smoothness_and_lemma_sweep():
    systems = _theorem_systems()
    assert len(systems) > 500
    for w in systems:
        r = analyze(w)
        assert r.smooth_by_qp, w
        assert r.lemma_wiPR, w


def test_normalized_systems_are_normalized():
    for w in normalized_systems(3, 5, 8):
        assert w.is_normalized()
