"""Buchberger's algorithm on sparse exponent dictionaries.

Polynomials are handled internally as ``dict[tuple[int, ...], coeff]``.  Laurent
ideals are saturated with an extra variable ``s`` placed first and eliminated
by a block order, so the s-free part of the basis generates the saturation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .laurent import ArityMismatch, LaurentPoly, common_vars
from .orders import MonomialOrder

SAT_VAR = "_s"


class EmptyInput(ValueError):
    pass


class NonFiniteQuotient(ArithmeticError):
    """The quotient ring is infinite dimensional (open staircase)."""


class NotGlobalOrder(ValueError):
    pass


# dictionary kernel ---------------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _axpy(p: dict, factor, shift: tuple, g: dict, skip: Optional[tuple] = None):
    """p -= factor * x^shift * g, in place; ``skip`` is a term of g already cancelled."""
    for e, v in g.items():
        if e == skip:
            continue
        e2 = tuple(a + b for a, b in zip(e, shift))
        old = p.get(e2)
        if old is None:
            p[e2] = -(factor * v)
        else:
            new = old - factor * v
            if new == 0:
                del p[e2]
            else:
                p[e2] = new


def _dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


class _Elem:
    __slots__ = ("lm", "lc", "poly")

    def __init__(self, poly: dict, key):
        self.lm = max(poly, key=key)
        self.lc = poly[self.lm]
        self.poly = poly


def _monic(poly: dict, key) -> dict:
    lm = max(poly, key=key)
    inv = Fraction(1) / poly[lm]
    if inv == 1:
        return dict(poly)
    return {e: c * inv for e, c in poly.items()}


def reduce_dict(p: dict, basis: Sequence[_Elem], key, quotients: Optional[list] = None,
                full: bool = True) -> dict:
    """Remainder of p on division by basis (leading terms in ``key``'s order).

    With ``full=False`` only the leading term is reduced repeatedly.  When a list
    of dicts is passed as ``quotients`` the multipliers are accumulated there.
    """
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for idx, g in enumerate(basis):
            if _divides(g.lm, m):
                factor = c / g.lc
                shift = _sub(m, g.lm)
                del p[m]
                _axpy(p, factor, shift, g.poly, skip=g.lm)
                if quotients is not None:
                    q = quotients[idx]
                    v = q.get(shift, 0) + factor
                    if v == 0:
                        q.pop(shift, None)
                    else:
                        q[shift] = v
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: _Elem, g: _Elem) -> dict:
    l = _lcm(f.lm, g.lm)
    p = {}
    _axpy(p, -Fraction(1) / f.lc, _sub(l, f.lm), f.poly)
    _axpy(p, Fraction(1) / g.lc, _sub(l, g.lm), g.poly)
    return p


def buchberger(polys: Iterable[dict], key) -> list[dict]:
    """Reduced Groebner basis (monic) of the ideal generated by ``polys``."""
    basis: list[_Elem] = []
    pairs: set[tuple[int, int]] = set()

    def add(poly: dict):
        new = _Elem(_monic(poly, key), key)
        k = len(basis)
        basis.append(new)
        for i in range(k):
            pairs.add((i, k))

    for p in polys:
        if p:
            r = reduce_dict(p, basis, key)
            if r:
                add(r)

    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: key(_lcm(basis[ij[0]].lm, basis[ij[1]].lm)))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        if _coprime(fi.lm, fj.lm):
            continue
        l = _lcm(fi.lm, fj.lm)
        if _chain_skip(i, j, l, basis, pairs):
            continue
        r = reduce_dict(_spoly(fi, fj), basis, key)
        if r:
            add(r)
    return _interreduce([b.poly for b in basis], key)


def _chain_skip(i: int, j: int, l: tuple, basis: list, pairs: set) -> bool:
    for k, b in enumerate(basis):
        if k in (i, j):
            continue
        if _divides(b.lm, l):
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                return True
    return False


def _interreduce(polys: list[dict], key) -> list[dict]:
    elems = [_Elem(_monic(p, key), key) for p in polys if p]
    # drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, e in enumerate(elems):
        redundant = False
        for jdx, f in enumerate(elems):
            if jdx == idx:
                continue
            if _divides(f.lm, e.lm) and (f.lm != e.lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(e)
    out = []
    for idx, e in enumerate(minimal):
        others = [f for jdx, f in enumerate(minimal) if jdx != idx]
        tail = dict(e.poly)
        del tail[e.lm]
        r = reduce_dict(tail, others, key)
        r[e.lm] = Fraction(1)
        out.append(r)
    out.sort(key=lambda p: key(max(p, key=key)))
    return out


# public interface ---------------------------------------------------------------------


def _default_order(vars: Sequence[str], grading) -> MonomialOrder:
    if grading is not None and all(g > 0 for g in grading):
        return MonomialOrder.weighted(grading)
    return MonomialOrder.grevlex()


class GroebnerBasis:
    """Reduced Groebner basis of a polynomial or Laurent ideal.

    For Laurent generators (or when ``invert`` names variables) the ideal is
    saturated by the product of the inverted variables, and also by the
    polynomial ``saturate`` when given.  ``basis`` holds the reduced basis of
    the saturated ideal in the original variables.
    """

    def __init__(self, generators: Sequence[LaurentPoly], order: Optional[MonomialOrder] = None,
                 invert: Optional[Iterable[str]] = None, saturate: Optional[LaurentPoly] = None):
        gens = [g for g in generators]
        if not gens:
            raise EmptyInput("no generators")
        self.vars = common_vars(gens)
        if any(g.is_zero() for g in gens):
            raise EmptyInput("zero generator")
        grading = next((g.grading for g in gens if g.grading is not None), None)
        self.order = order if order is not None else _default_order(self.vars, grading)
        if self.order.is_local:
            raise NotGlobalOrder("Groebner bases need a global order; use local_standard_basis")
        self.generators = tuple(gens)
        self.key = self.order.key_function()
        if invert is None:
            inv = [v for i, v in enumerate(self.vars) if any(e[i] < 0 for g in gens for e in g.terms)]
        else:
            inv = [v for v in self.vars if v in set(invert)]
        self.inverted = tuple(inv)
        n = len(self.vars)
        if saturate is not None and (saturate.vars != self.vars or saturate.is_laurent() or not saturate):
            raise ValueError("saturating element must be a nonzero polynomial in the same variables")
        self.saturate = saturate
        if self.inverted or saturate is not None:
            self._mask = tuple(1 if v in self.inverted else 0 for v in self.vars)
            self._ext_key = MonomialOrder.eliminate_first(1, self.order).key_function()
            # s * h * prod(inverted) - 1, with h = 1 unless a saturating element is given
            h = saturate.terms if saturate is not None else {(0,) * n: Fraction(1)}
            self._h_ext = {(0,) + e: c for e, c in h.items()}
            cleared = [self._to_ext(g.terms) for g in gens]
            sat = {(1,) + tuple(a + m for a, m in zip(e, self._mask)): c for e, c in h.items()}
            sat[(0,) * (n + 1)] = sat.get((0,) * (n + 1), 0) - 1
            self._ext = [_Elem(p, self._ext_key) for p in buchberger(cleared + [sat], self._ext_key)]
            polys = [{e[1:]: c for e, c in p.poly.items()} for p in self._ext if p.lm[0] == 0]
        else:
            self._mask = None
            self._ext = None
            polys = buchberger([dict(g.terms) for g in gens], self.key)
        self._elems = [_Elem(p, self.key) for p in polys]
        self.basis = [LaurentPoly(self.vars, p, grading, _clean=True) for p in polys]
        self._grading = grading
        self._std = None

    # conversions between Laurent and the s-extended polynomial ring

    def _to_ext(self, terms: dict) -> dict:
        """x^a -> x^(a + k*mask) (s*h)^k with the least k making exponents nonnegative."""
        out = {}
        k = 0
        for e in terms:
            for a, m in zip(e, self._mask):
                if a < 0:
                    if not m:
                        raise ValueError("negative exponent in a variable that is not inverted")
                    k = max(k, -a)
        for e, c in terms.items():
            out[(k,) + tuple(a + k * m for a, m in zip(e, self._mask))] = c
        if k and self.saturate is not None:
            for _ in range(k):
                out = _dict_mul(out, self._h_ext)
        return out

    def _from_ext(self, terms: dict) -> dict:
        if self.saturate is not None and any(e[0] for e in terms):
            raise NonFiniteQuotient("remainder involves the saturation variable")
        out = {}
        for e, c in terms.items():
            k = e[0]
            f = tuple(a - k * m for a, m in zip(e[1:], self._mask))
            v = out.get(f, 0) + c
            if v == 0:
                out.pop(f, None)
            else:
                out[f] = v
        return out

    def _poly(self, terms: dict) -> LaurentPoly:
        return LaurentPoly(self.vars, terms, self._grading, _clean=True)

    # queries

    def normal_form(self, g: LaurentPoly) -> LaurentPoly:
        if g.vars != self.vars:
            raise ArityMismatch(f"variables {g.vars} vs {self.vars}")
        if not g.is_laurent():
            return self._poly(reduce_dict(g.terms, self._elems, self.key))
        if self._ext is None:
            raise ValueError("Laurent input for a polynomial ideal")
        r = reduce_dict(self._to_ext(g.terms), self._ext, self._ext_key)
        return self._poly(self._from_ext(r))

    def contains(self, g: LaurentPoly) -> bool:
        return self.normal_form(g).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self._elems) == 1 and not any(self._elems[0].lm)

    def standard_monomials(self) -> list[tuple[int, ...]]:
        """Monomials outside the leading ideal; NonFiniteQuotient if infinitely many."""
        if self._std is not None:
            return list(self._std)
        n = len(self.vars)
        lms = [e.lm for e in self._elems]
        for i in range(n):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                raise NonFiniteQuotient(f"no pure power of {self.vars[i]} among leading monomials")
        found = []
        stack = [(0,) * n] if not self.is_unit_ideal() else []
        seen = set(stack)
        while stack:
            m = stack.pop()
            if any(_divides(lm, m) for lm in lms):
                continue
            found.append(m)
            for i in range(n):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        found.sort(key=self.key)
        self._std = tuple(found)
        return list(found)

    def dimension(self) -> int:
        return len(self.standard_monomials())

    def coordinates(self, g: LaurentPoly) -> list:
        """Coordinates of the normal form of g on the standard monomials."""
        r = self.normal_form(g)
        std = self.standard_monomials()
        index = {m: i for i, m in enumerate(std)}
        out = [Fraction(0)] * len(std)
        for e, c in r.terms.items():
            if e not in index:
                raise NonFiniteQuotient(f"normal form leaves the standard monomials ({e})")
            out[index[e]] = c
        return out

    def multiplication_matrix(self, h: LaurentPoly) -> list[list]:
        """Matrix of multiplication by h on the quotient; column j is h * std_j."""
        std = self.standard_monomials()
        cols = [self.coordinates(h * LaurentPoly.monomial(m, self.vars)) for m in std]
        size = len(std)
        return [[cols[j][i] for j in range(size)] for i in range(size)]

    def s_polynomials_reduce_to_zero(self) -> bool:
        """Buchberger's criterion on the returned basis."""
        elems = self._elems
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                if reduce_dict(_spoly(elems[i], elems[j]), elems, self.key):
                    return False
        return True


def groebner_basis(generators: Sequence[LaurentPoly], order: Optional[MonomialOrder] = None) -> list[LaurentPoly]:
    """Reduced Groebner basis; Laurent inputs are saturated by the inverted variables."""
    return GroebnerBasis(generators, order).basis


def normal_form_with_quotients(g: LaurentPoly, basis: Sequence[LaurentPoly],
                               order: Optional[MonomialOrder] = None) -> tuple[LaurentPoly, list[LaurentPoly]]:
    """Division of a polynomial by a list: g = sum(q_i * b_i) + r."""
    if not basis:
        raise EmptyInput("empty basis")
    vars = common_vars(list(basis) + [g])
    if g.is_laurent() or any(b.is_laurent() for b in basis):
        raise ValueError("division with quotients needs polynomial inputs; use GroebnerBasis.normal_form")
    if order is None:
        order = _default_order(vars, g.grading or basis[0].grading)
    key = order.key_function()
    elems = [_Elem(dict(b.terms), key) for b in basis]
    quotients = [{} for _ in basis]
    r = reduce_dict(g.terms, elems, key, quotients)
    return LaurentPoly(vars, r, g.grading, _clean=True), [LaurentPoly(vars, q, _clean=True) for q in quotients]
