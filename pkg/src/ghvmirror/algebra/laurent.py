"""Sparse multivariate Laurent polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence

from .orders import MonomialOrder
from .ratfunc import RatFunc
from .upoly import _coeff_str

_GREVLEX_KEY = MonomialOrder.grevlex().key_function()


class ArityMismatch(ValueError):
    pass


class NonMonomialDenominator(ValueError):
    pass


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational, RatFunc))


def _norm_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class LaurentPoly:
    """Finite sum of c * x^e, e in Z^n.

    ``vars`` fixes the arity; ``grading`` optionally assigns each variable a
    rational weight used by :meth:`homogeneous_degree`.  Zero coefficients are
    never stored.  Treat instances as immutable.
    """

    __slots__ = ("vars", "terms", "grading")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None,
                 grading: Optional[Sequence] = None, _clean: bool = False):
        self.vars = tuple(vars)
        n = len(self.vars)
        if _clean:
            self.terms = terms
        else:
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ArityMismatch(f"exponent {e} has arity {len(e)}, ring has {n}")
                if c == 0:
                    continue
                clean[e] = _norm_coeff(c)
            self.terms = clean
        self.grading = tuple(Fraction(g) for g in grading) if grading is not None else None
        if self.grading is not None and len(self.grading) != n:
            raise ArityMismatch("grading length differs from number of variables")

    # construction -------------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str], grading=None) -> "LaurentPoly":
        return cls(vars, {}, grading, _clean=True)

    @classmethod
    def const(cls, c, vars: Sequence[str], grading=None) -> "LaurentPoly":
        return cls(vars, {(0,) * len(vars): c}, grading)

    @classmethod
    def monomial(cls, exp: Sequence[int], vars: Sequence[str], c=Fraction(1), grading=None) -> "LaurentPoly":
        return cls(vars, {tuple(exp): c}, grading)

    @classmethod
    def gen(cls, name: str, vars: Sequence[str], grading=None) -> "LaurentPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)}, grading)

    @classmethod
    def gens(cls, vars: Sequence[str], grading=None) -> list["LaurentPoly"]:
        return [cls.gen(v, vars, grading) for v in vars]

    def _new(self, terms: dict, grading=None) -> "LaurentPoly":
        g = grading if grading is not None else self.grading
        return LaurentPoly(self.vars, terms, g, _clean=True)

    def with_grading(self, grading) -> "LaurentPoly":
        return LaurentPoly(self.vars, self.terms, grading, _clean=True)

    def _check(self, other: "LaurentPoly"):
        if other.vars != self.vars:
            raise ArityMismatch(f"variables {self.vars} vs {other.vars}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if _is_scalar(other):
            return LaurentPoly.const(other, self.vars)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    # basic queries ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_laurent(self) -> bool:
        """True when some exponent is negative."""
        return any(x < 0 for e in self.terms for x in e)

    def coeff(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), Fraction(0))

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.terms))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, exp: Sequence[int], weights: Optional[Sequence] = None) -> Fraction:
        w = weights if weights is not None else self.grading
        if w is None:
            return Fraction(sum(exp))
        return sum((Fraction(a) * b for a, b in zip(w, exp)), Fraction(0))

    def homogeneous_degree(self, weights: Optional[Sequence] = None) -> Optional[Fraction]:
        """Common weighted degree of all terms, or None if inhomogeneous."""
        degs = {self.weighted_degree(e, weights) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def coefficients(self):
        return self.terms.values()

    # arithmetic -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if _is_scalar(other):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_coeff() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return self._new(out, self.grading or other.grading)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return self._lift(other) - self

    def scale(self, c) -> "LaurentPoly":
        if c == 0:
            return self._new({})
        return self._new({e: v * c for e, v in self.terms.items()})

    def shift(self, exp: Sequence[int], c=None) -> "LaurentPoly":
        """Multiply by the monomial c * x^exp."""
        out = {}
        for e, v in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exp))] = v if c is None else v * c
        return self._new(out)

    def __mul__(self, other) -> "LaurentPoly":
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return self.shift(e, c)._new_grading(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        out = {e: c for e, c in out.items() if c != 0}
        return self._new(out, self.grading or other.grading)

    def _new_grading(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.grading is None and other.grading is not None:
            return self.with_grading(other.grading)
        return self

    def __rmul__(self, other) -> "LaurentPoly":
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NonMonomialDenominator("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return self._new({tuple(-x * (-k) for x in e): (Fraction(1) / c) ** (-k)})
        result = LaurentPoly.const(1, self.vars, self.grading)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "LaurentPoly":
        if _is_scalar(other):
            return self.scale(Fraction(1) / other)
        if isinstance(other, LaurentPoly):
            self._check(other)
            if not other.is_monomial():
                raise NonMonomialDenominator(f"cannot divide by non-monomial {other}")
            (e, c), = other.terms.items()
            return self.shift(tuple(-x for x in e), Fraction(1) / c)
        return NotImplemented

    # calculus -----------------------------------------------------------------

    def diff(self, i: int) -> "LaurentPoly":
        """Partial derivative in variable i."""
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a:
                f = list(e)
                f[i] = a - 1
                out[tuple(f)] = c * a
        return self._new(out)

    def xi(self, i: int) -> "LaurentPoly":
        """Logarithmic derivative x_i * d/dx_i."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e] = c * e[i]
        return self._new(out)

    # substitution -------------------------------------------------------------

    def evaluate(self, point: Sequence, one=Fraction(1)):
        """Evaluate at a point whose entries support *, + and integer powers.

        Negative exponents need invertible entries (``x ** -k`` must work).
        """
        acc = None
        for e, c in self.terms.items():
            t = one * c
            for x, a in zip(point, e):
                if a:
                    t = t * (x ** a)
            acc = t if acc is None else acc + t
        return acc if acc is not None else one * 0

    def subs(self, mapping: Mapping[str, object], new_vars: Optional[Sequence[str]] = None) -> "LaurentPoly":
        """Substitute variables by Laurent polynomials or scalars.

        Substituted values must live in ``new_vars`` (default: the same ring).
        Variables not in ``mapping`` are kept and must exist in ``new_vars``.
        """
        target = tuple(new_vars) if new_vars is not None else self.vars
        images = []
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                if not isinstance(val, LaurentPoly):
                    val = LaurentPoly.const(val, target)
                elif val.vars != target:
                    raise ArityMismatch(f"substitution for {v} lives in {val.vars}")
                images.append(val)
            else:
                images.append(LaurentPoly.gen(v, target))
        return self.evaluate(images, one=LaurentPoly.const(1, target))

    def map_coeffs(self, fn) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[e] = _norm_coeff(v)
        return self._new(out)

    def rename(self, new_vars: Sequence[str]) -> "LaurentPoly":
        """Same terms, new variable names (positional)."""
        if len(new_vars) != self.nvars:
            raise ArityMismatch("rename must keep the arity")
        return LaurentPoly(new_vars, self.terms, self.grading, _clean=True)

    def embed(self, new_vars: Sequence[str]) -> "LaurentPoly":
        """Re-express in a larger (or reordered) set of variables."""
        new_vars = tuple(new_vars)
        idx = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(new_vars)
            for j, a in zip(idx, e):
                f[j] = a
            out[tuple(f)] = c
        return LaurentPoly(new_vars, out, _clean=True)

    def split_monomial_denominator(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        """Return (P, b) with self = P / x^b, P a polynomial not divisible by x_i for b_i > 0."""
        mins = self.min_exponents()
        b = tuple(-m if m < 0 else 0 for m in mins)
        return self.shift(b), b

    # ordering and display -------------------------------------------------------

    def leading(self, order: MonomialOrder) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("leading term of zero polynomial")
        key = order.key_function()
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def sorted_terms(self, order: Optional[MonomialOrder] = None) -> list[tuple[tuple, object]]:
        key = order.key_function() if order is not None else _GREVLEX_KEY
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(_power_str(v, a) for v, a in zip(self.vars, e) if a)
            parts.append(_term(c, mono))
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


def _power_str(v: str, a: int) -> str:
    if a == 1:
        return v
    if a < 0:
        return f"{v}^({a})"
    return f"{v}^{a}"


def _term(c, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_coeff_str(c)}*{mono}"


def poly_from_dict(vars: Sequence[str], terms: Mapping, grading=None) -> LaurentPoly:
    return LaurentPoly(vars, dict(terms), grading)


def common_vars(polys: Iterable[LaurentPoly]) -> tuple[str, ...]:
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    vars = polys[0].vars
    for p in polys[1:]:
        if p.vars != vars:
            raise ArityMismatch(f"variables {vars} vs {p.vars}")
    return vars
