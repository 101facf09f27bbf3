"""Rational functions in one parameter over Q, kept in lowest terms."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .upoly import UPoly


class SpecializationError(ArithmeticError):
    """Raised when a denominator vanishes at the requested parameter value."""


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1.

    Instances compare equal to ints and Fractions when they are constant,
    so polynomial code can test ``c == 0`` without caring about the domain.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str = "q", _normalized: bool = False):
        if not isinstance(num, UPoly):
            num = UPoly((Fraction(num),), var)
        if den is None:
            den = UPoly((Fraction(1),), var)
        elif not isinstance(den, UPoly):
            den = UPoly((Fraction(den),), var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = UPoly((Fraction(1),), var)
            elif den.degree > 0:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.lc()
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        if num.var != var:
            num = UPoly(num.coeffs, var)
        if den.var != var:
            den = UPoly(den.coeffs, var)
        self.num, self.den, self.var = num, den, var

    @classmethod
    def gen(cls, var: str = "q") -> "RatFunc":
        return cls(UPoly((Fraction(0), Fraction(1)), var), var=var, _normalized=True)

    @classmethod
    def from_poly(cls, coeffs, var: str = "q") -> "RatFunc":
        return cls(UPoly([Fraction(c) for c in coeffs], var), var=var, _normalized=True)

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.var != self.var:
                raise ValueError(f"mixing parameters {self.var} and {other.var}")
            return other
        if isinstance(other, (int, Rational)):
            return RatFunc(UPoly((Fraction(other),), self.var), var=self.var, _normalized=True)
        return None

    # predicates -----------------------------------------------------------

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return Fraction(self.num[0])

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.var == other.var and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_const() and Fraction(self.num[0]) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_const():
            return hash(Fraction(self.num[0]))
        return hash((self.num.coeffs, self.den.coeffs, self.var))

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc(self.num + o.num, var=self.var, _normalized=True)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.var)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, self.var, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                return RatFunc(UPoly((), self.var), var=self.var, _normalized=True)
            return RatFunc(self.num * Fraction(other), self.den, self.var, _normalized=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc(self.num * o.num, var=self.var, _normalized=True)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if n1.is_zero() or n2.is_zero():
            return RatFunc(UPoly((), self.var), var=self.var, _normalized=True)
        g = n1.gcd(d2)
        if g.degree > 0:
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if g.degree > 0:
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        lc = den.lc()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFunc(num, den, self.var, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, self.var, _normalized=True)

    # evaluation -------------------------------------------------------------

    def specialize(self, value) -> Fraction:
        value = Fraction(value)
        d = self.den(value)
        if d == 0:
            raise SpecializationError(f"denominator of {self} vanishes at {self.var}={value}")
        return Fraction(self.num(value)) / d

    def valuation_at(self, a) -> float:
        """Order at var = a; ``inf`` for zero."""
        if self.num.is_zero():
            return float("inf")
        return self.num.valuation_at(Fraction(a)) - self.den.valuation_at(Fraction(a))

    def derivative(self) -> "RatFunc":
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFunc(num, self.den * self.den, self.var)

    # display ----------------------------------------------------------------

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"
