"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first.  Any coefficient type supporting
field arithmetic and ``== 0`` works; in practice that is ``Fraction`` or
:class:`~ghvmirror.algebra.ratfunc.RatFunc`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        self.coeffs = _strip(list(coeffs))
        self.var = var

    @classmethod
    def const(cls, c, var: str = "x") -> "UPoly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, c, k: int, var: str = "x", zero=Fraction(0)) -> "UPoly":
        return cls([zero] * k + [c], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "UPoly":
        p = cls((Fraction(1),), var)
        for r in roots:
            p = p * cls((-r, Fraction(1)), var)
        return p

    def _wrap(self, coeffs) -> "UPoly":
        return UPoly(coeffs, self.var)

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly((other,), self.var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other) -> "UPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            if other == 0:
                return self._wrap(())
            return self._wrap([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._wrap(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self._wrap((Fraction(1),))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = Fraction(1) / other.lc()
        if len(rem) - 1 < db:
            return self._wrap(()), self
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = c * inv
            quot[k - db] = c
            for j, y in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - c * y
        return self._wrap(quot), self._wrap(rem[:db])

    def __floordiv__(self, other) -> "UPoly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "UPoly":
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = Fraction(1) / self.lc()
        return self * inv

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return self._wrap([c * k for k, c in enumerate(self.coeffs)][1:])

    def compose_shift(self, a) -> "UPoly":
        """Return p(x + a)."""
        out = self._wrap(())
        lin = self._wrap((a, Fraction(1)))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def valuation_at(self, a) -> int:
        """Order of vanishing at x = a; the zero polynomial is rejected."""
        if self.is_zero():
            raise ValueError("valuation of zero polynomial")
        k = 0
        p = self
        lin = self._wrap((-a, Fraction(1)))
        while True:
            q, r = p.divmod(lin)
            if not r.is_zero():
                return k
            p, k = q, k + 1

    def __repr__(self) -> str:
        return f"UPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            parts.append(_term_str(c, self.var, k))
        return _join_terms(parts)


def _term_str(c, var: str, k: int) -> str:
    if k == 0:
        return _coeff_str(c, bare=True)
    mono = var if k == 1 else f"{var}^{k}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_coeff_str(c)}*{mono}"


def _coeff_str(c, bare: bool = False) -> str:
    s = str(c)
    if bare:
        return s
    if isinstance(c, (int, Fraction)) or not any(t in s for t in (" + ", " - ", "/")):
        return s
    return f"({s})"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def cyclotomic(e: int, var: str = "x") -> UPoly:
    """The e-th cyclotomic polynomial over Q."""
    p = UPoly([Fraction(-1)] + [Fraction(0)] * (e - 1) + [Fraction(1)], var)
    for k in range(1, e):
        if e % k == 0:
            p = p // cyclotomic(k, var)
    return p


def rational_roots(p: UPoly) -> list[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients."""
    if p.is_zero():
        raise ValueError("every number is a root of the zero polynomial")
    coeffs = [Fraction(c) for c in p.coeffs]
    roots = []
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    coeffs = coeffs[k:]
    if len(coeffs) == 1:
        return roots
    # squarefree part keeps the candidate search small
    q = UPoly(coeffs, p.var)
    q = q // q.gcd(q.derivative())
    lcm_den = 1
    for c in q.coeffs:
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    ints = [int(c * lcm_den) for c in q.coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            if gcd(num, den) != 1:
                continue
            for sign in (1, -1):
                r = Fraction(sign * num, den)
                if q(r) == 0:
                    roots.append(r)
    return sorted(set(roots))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]
