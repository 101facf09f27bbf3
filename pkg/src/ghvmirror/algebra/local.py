"""Local standard bases at the origin via Mora's tangent cone algorithm."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .groebner import EmptyInput, _Elem, _axpy, _divides, _lcm, _monic, _sub
from .laurent import LaurentPoly, common_vars
from .orders import MonomialOrder

INFINITE = float("inf")


class NotLocalOrder(ValueError):
    pass


def _ecart(poly: dict, lm: tuple) -> int:
    return max(sum(e) for e in poly) - sum(lm)


class _LElem(_Elem):
    __slots__ = ("ecart",)

    def __init__(self, poly: dict, key):
        super().__init__(poly, key)
        self.ecart = _ecart(poly, self.lm)


def corner_degree(lms: Sequence[tuple], nvars: int, bound: int = 60) -> Optional[int]:
    """Least N with every monomial of degree N divisible by some lm, or None."""
    layer = {(0,) * nvars}
    for deg in range(bound + 1):
        layer = {m for m in layer if not any(_divides(lm, m) for lm in lms)}
        if not layer:
            return deg
        layer = {m[:i] + (m[i] + 1,) + m[i + 1:] for m in layer for i in range(nvars)}
    return None


def _truncate(h: dict, corner: Optional[int]) -> dict:
    if corner is None:
        return h
    return {e: c for e, c in h.items() if sum(e) < corner}


def mora_normal_form(h: dict, basis: Sequence[_LElem], key, corner: Optional[int] = None) -> dict:
    """Weak normal form: result is 0 or has a leading monomial outside L(basis).

    With ``corner`` set, m^corner lies in the local ideal and higher terms are dropped.
    """
    todo = list(basis)
    h = _truncate(dict(h), corner)
    while h:
        lm = max(h, key=key)
        cands = [g for g in todo if _divides(g.lm, lm)]
        if not cands:
            return h
        g = min(cands, key=lambda g: g.ecart)
        e_h = _ecart(h, lm)
        if g.ecart > e_h:
            todo.append(_LElem(dict(h), key))
        factor = h[lm] / g.lc
        shift = _sub(lm, g.lm)
        del h[lm]
        _axpy(h, factor, shift, g.poly, skip=g.lm)
        h = _truncate(h, corner)
    return h


def _spoly(f: _LElem, g: _LElem) -> dict:
    l = _lcm(f.lm, g.lm)
    p = {}
    _axpy(p, -Fraction(1) / f.lc, _sub(l, f.lm), f.poly)
    _axpy(p, Fraction(1) / g.lc, _sub(l, g.lm), g.poly)
    return p


def mora_standard_basis(polys: Sequence[dict], key) -> list[_LElem]:
    basis: list[_LElem] = []
    pairs: list[tuple[int, int]] = []
    corner: Optional[int] = None

    def add(r: dict) -> None:
        nonlocal corner
        basis.append(_LElem(_monic(r, key), key))
        pairs.extend((i, len(basis) - 1) for i in range(len(basis) - 1))
        corner = corner_degree([e.lm for e in basis], len(basis[0].lm))

    for p in polys:
        if not p:
            continue
        r = mora_normal_form(p, basis, key, corner)
        if r:
            add(r)
    while pairs:
        i, j = pairs.pop()
        r = mora_normal_form(_spoly(basis[i], basis[j]), basis, key, corner)
        if r:
            add(r)
    return _minimalize(basis)


def _minimalize(basis: list[_LElem]) -> list[_LElem]:
    out = []
    for idx, e in enumerate(basis):
        if any(_divides(f.lm, e.lm) and (f.lm != e.lm or jdx < idx)
               for jdx, f in enumerate(basis) if jdx != idx):
            continue
        out.append(e)
    return out


def count_standard_monomials(lms: Sequence[tuple], nvars: int, degree_bound: int = 30) -> float:
    """Number of monomials outside the monomial ideal generated by lms (INFINITE if open)."""
    if any(not any(lm) for lm in lms):
        return 0
    count = 0
    layer = {(0,) * nvars}
    for deg in range(degree_bound + 1):
        layer = {m for m in layer if not any(_divides(lm, m) for lm in lms)}
        if not layer:
            return count
        count += len(layer)
        layer = {m[:i] + (m[i] + 1,) + m[i + 1:] for m in layer for i in range(nvars)}
    return INFINITE


def local_standard_basis(generators: Sequence[LaurentPoly], order: Optional[MonomialOrder] = None,
                         degree_bound: int = 30) -> tuple[list[LaurentPoly], float]:
    """Standard basis for the local ordering at the origin and the local quotient dimension.

    A generator with nonzero constant term is a unit locally, giving dimension 0.
    """
    gens = list(generators)
    if not gens:
        raise EmptyInput("no generators")
    vars = common_vars(gens)
    order = order if order is not None else MonomialOrder.local()
    if not order.is_local:
        raise NotLocalOrder(f"order {order.kind} is not local")
    if any(g.is_laurent() for g in gens):
        raise ValueError("local standard bases need polynomial generators")
    key = order.key_function()
    elems = mora_standard_basis([dict(g.terms) for g in gens if g], key)
    basis = [LaurentPoly(vars, e.poly, _clean=True) for e in elems]
    dim = count_standard_monomials([e.lm for e in elems], len(vars), degree_bound)
    return basis, dim


def local_dimension(generators: Sequence[LaurentPoly], degree_bound: int = 30) -> float:
    return local_standard_basis(generators, degree_bound=degree_bound)[1]


def _monomials_below(n: int, N: int) -> list[tuple]:
    out = [()]
    for _ in range(n):
        out = [m + (k,) for m in out for k in range(N)]
    return [m for m in out if sum(m) < N]


def _rank_mod(rows: list[dict]) -> int:
    """Rank of sparse rows; pivots on the lowest-degree monomial."""
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            key = min(row, key=lambda e: (sum(e), e))
            if key not in pivots:
                c = row[key]
                pivots[key] = {e: v / c for e, v in row.items()}
                break
            c = row[key]
            for e, v in pivots[key].items():
                w = row.get(e, 0) - c * v
                if w == 0:
                    row.pop(e, None)
                else:
                    row[e] = w
    return len(pivots)


def truncated_colength(generators: Sequence[LaurentPoly], N: int) -> int:
    """dim k[x] / (I + m^N) for the ideal generated at the origin."""
    vars = common_vars(generators)
    n = len(vars)
    gens = [{e: c for e, c in g.terms.items() if sum(e) < N} for g in generators]
    rows = []
    for g in gens:
        if not g:
            continue
        low = min(sum(e) for e in g)
        for a in _monomials_below(n, N - low):
            row = {}
            for e, c in g.items():
                s = tuple(x + y for x, y in zip(a, e))
                if sum(s) < N:
                    row[s] = c
            if row:
                rows.append(row)
    total = len(_monomials_below(n, N))
    return total - _rank_mod(rows)


def local_colength(generators: Sequence[LaurentPoly], max_order: int = 40) -> float:
    """Local length at the origin from the truncations I + m^N.

    Once dim k[x]/(I + m^N) stops growing, m^N lies in I + m^(N+1), hence in
    the local ideal by Nakayama, and the truncated count is exact.  Works over
    any coefficient field; INFINITE if no stabilization by ``max_order``.
    """
    gens = [g for g in generators if g]
    if not gens:
        raise EmptyInput("no generators")
    if any(g.is_laurent() for g in gens):
        raise ValueError("local lengths need polynomial generators")
    if any(g.constant_coeff() != 0 for g in gens):
        return 0
    prev = truncated_colength(gens, 1)
    for N in range(2, max_order + 1):
        cur = truncated_colength(gens, N)
        if cur == prev:
            return cur
        prev = cur
    return INFINITE
