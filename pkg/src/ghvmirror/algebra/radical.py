"""Exact arithmetic in K[s, eps] / (s^e - radicand, Phi_e(eps)).

K is Q or a rational function field.  ``s`` stands for an e-th root of the
radicand and ``eps`` for a primitive e-th root of unity.  Elements are dense on
the basis s^i eps^j (i < e, j < phi(e)), so zero testing is exact.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .matrix import solve
from .ratfunc import RatFunc
from .upoly import UPoly, cyclotomic


class RadicalRing:
    def __init__(self, e: int, radicand):
        if e < 1:
            raise ValueError("root order must be positive")
        self.e = e
        self.radicand = radicand
        self.phi = cyclotomic(e, "eps")
        self.deg = self.phi.degree
        # eps^j reduced mod Phi_e for j < 2*deg
        self._eps_pow = []
        x = UPoly((Fraction(0), Fraction(1)), "eps")
        p = UPoly((Fraction(1),), "eps")
        for _ in range(2 * self.deg):
            self._eps_pow.append(p % self.phi)
            p = p * x

    def __eq__(self, other) -> bool:
        return isinstance(other, RadicalRing) and self.e == other.e and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((self.e, self.radicand))

    @property
    def dim(self) -> int:
        return self.e * self.deg

    def element(self, coeffs: dict) -> "RadicalElement":
        return RadicalElement(self, coeffs)

    def const(self, c) -> "RadicalElement":
        return RadicalElement(self, {(0, 0): c})

    @property
    def one(self) -> "RadicalElement":
        return self.const(Fraction(1))

    @property
    def root(self) -> "RadicalElement":
        """s, an e-th root of the radicand."""
        return self._reduce({(1, 0): Fraction(1)})

    @property
    def eps(self) -> "RadicalElement":
        return self._reduce({(0, 1): Fraction(1)})

    def scaled(self, coefficient, k: int = 0) -> "RadicalElement":
        """coefficient * s * eps^k."""
        return self.root * self.eps ** k * coefficient

    def _reduce(self, raw: dict) -> "RadicalElement":
        e = self.e
        out: dict = {}
        for (i, j), c in raw.items():
            if c == 0:
                continue
            # s^i = radicand^(i // e) * s^(i % e)
            qi, ri = divmod(i, e)
            if qi:
                c = c * self.radicand ** qi
            for jj, cj in self._eps_reduce(j):
                key = (ri, jj)
                out[key] = out.get(key, 0) + c * cj
        return RadicalElement(self, out)

    def _eps_reduce(self, j: int):
        if j < self.deg:
            return [(j, Fraction(1))]
        j %= self.e
        if j < len(self._eps_pow):
            p = self._eps_pow[j]
        else:
            p = UPoly.monomial(Fraction(1), j, "eps") % self.phi
        return [(k, c) for k, c in enumerate(p.coeffs) if c != 0]


def _scalar(x) -> bool:
    return isinstance(x, (int, Rational, RatFunc))


class RadicalElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RadicalRing, coeffs: dict):
        self.ring = ring
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    def _lift(self, other) -> "RadicalElement":
        if isinstance(other, RadicalElement):
            if other.ring != self.ring:
                raise ValueError("elements of different radical rings")
            return other
        if _scalar(other):
            return self.ring.const(other)
        raise TypeError(f"cannot combine with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return RadicalElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RadicalElement(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if _scalar(other):
            if other == 0:
                return RadicalElement(self.ring, {})
            return RadicalElement(self.ring, {k: v * other for k, v in self.coeffs.items()})
        other = self._lift(other)
        raw: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                raw[key] = raw.get(key, 0) + c1 * c2
        return self.ring._reduce(raw)

    __rmul__ = __mul__

    def basis_keys(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.ring.e) for j in range(self.ring.deg)]

    def vector(self) -> list:
        return [self.coeffs.get(k, Fraction(0)) for k in self.basis_keys()]

    def inverse(self) -> "RadicalElement":
        """Solve self * x = 1 over the coefficient field; ZeroDivisionError if not a unit."""
        keys = self.basis_keys()
        cols = [(self * RadicalElement(self.ring, {k: Fraction(1)})).vector() for k in keys]
        M = [[cols[j][i] for j in range(len(keys))] for i in range(len(keys))]
        rhs = self.ring.one.vector()
        try:
            x = solve(M, rhs)
        except ValueError as exc:
            raise ZeroDivisionError(f"{self} is not invertible") from exc
        return RadicalElement(self.ring, dict(zip(keys, x)))

    def __truediv__(self, other):
        if _scalar(other):
            return self * (Fraction(1) / other)
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def s_polynomial(self) -> UPoly:
        """The element as a polynomial in s, assuming no eps component."""
        if any(j for _, j in self.coeffs):
            raise ValueError("element involves eps")
        coeffs = [Fraction(0)] * self.ring.e
        for (i, _), c in self.coeffs.items():
            coeffs[i] = c
        return UPoly(coeffs, "s")

    def __repr__(self) -> str:
        return f"RadicalElement({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = "*".join(x for x in (_p("s", i), _p("eps", j)) if x)
            cs = str(c)
            if isinstance(c, RatFunc) and not c.is_const():
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)


def _p(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"
