"""Quantum differential operators in theta, q and D = theta*q*d/dq.

The ring is generated by a central theta, an invertible q and D with
D*q = q*(D + theta).  Elements are kept normal ordered as sums of
theta^a D^e q^b, with every q to the right.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Optional

from .algebra.ratfunc import RatFunc
from .algebra.upoly import UPoly
from .wps import WeightSystem


class NonDivisibleWeights(ValueError):
    pass


class DOperator:
    """Normal-ordered sum of c * T^a * D^e * q^b (T stands for theta)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[tuple[int, int, int], object]] = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c) -> "DOperator":
        return cls({(0, 0, 0): c})

    @classmethod
    def D(cls) -> "DOperator":
        return cls({(0, 1, 0): 1})

    @classmethod
    def theta(cls) -> "DOperator":
        return cls({(1, 0, 0): 1})

    @classmethod
    def q(cls, power: int = 1) -> "DOperator":
        return cls({(0, 0, power): 1})

    def _lift(self, other) -> "DOperator":
        if isinstance(other, DOperator):
            return other
        return DOperator.const(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DOperator):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "DOperator":
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return DOperator(out)

    __radd__ = __add__

    def __neg__(self) -> "DOperator":
        return DOperator({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "DOperator":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "DOperator":
        return self._lift(other) - self

    def __mul__(self, other) -> "DOperator":
        other = self._lift(other)
        out: dict = {}
        for (a1, e1, b1), c1 in self.terms.items():
            for (a2, e2, b2), c2 in other.terms.items():
                # q^b1 D^e2 = (D - b1*T)^e2 q^b1
                for j in range(e2 + 1):
                    c = c1 * c2 * comb(e2, j) * (-b1) ** (e2 - j)
                    if c == 0:
                        continue
                    key = (a1 + a2 + e2 - j, e1 + j, b1 + b2)
                    out[key] = out.get(key, 0) + c
        return DOperator(out)

    def __rmul__(self, other) -> "DOperator":
        return self._lift(other) * self

    def __pow__(self, k: int) -> "DOperator":
        if k < 0:
            raise ValueError("negative power of an operator")
        out = DOperator.const(1)
        for _ in range(k):
            out = out * self
        return out

    def degree_D(self) -> int:
        return max((e for _, e, _ in self.terms), default=-1)

    def at_theta_zero(self) -> "DOperator":
        return DOperator({k: v for k, v in self.terms.items() if k[0] == 0})

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], Fraction]]:
        # q-degree ascending, then D-degree descending, then theta ascending
        return sorted(self.terms.items(), key=lambda kv: (kv[0][2], -kv[0][1], kv[0][0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, e, b), c in self.sorted_terms():
            factors = [_pw("T", a), _pw("D", e), _pw("q", b)]
            mono = "*".join(f for f in factors if f)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self) -> str:
        return f"DOperator({self})"


def _pw(name: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return name
    if k < 0:
        return f"{name}^({k})"
    return f"{name}^{k}"


def linear(alpha, beta) -> DOperator:
    """alpha*D - beta*T."""
    return DOperator({(0, 1, 0): alpha, (1, 0, 0): -Fraction(beta)})


@dataclass(frozen=True)
class FactorizedQDE:
    """left_scale * prod(D - r T) - right_scale * prod(D - s T) * q.

    Roots are stored as sorted tuples of Fractions, so every factor is monic in D.
    """

    left_scale: Fraction
    left_roots: tuple[Fraction, ...]
    right_scale: Fraction
    right_roots: tuple[Fraction, ...]
    # False while the q is still on the left of the right-hand factors
    shifted: bool = True

    @property
    def order(self) -> int:
        return len(self.left_roots)

    def expand(self) -> DOperator:
        left = DOperator.const(self.left_scale)
        for r in self.left_roots:
            left = left * linear(1, r)
        right = DOperator.const(self.right_scale)
        if not self.shifted:
            right = right * DOperator.q()
        for s in self.right_roots:
            right = right * linear(1, s)
        if self.shifted:
            right = right * DOperator.q()
        return left - right

    def shift(self) -> "FactorizedQDE":
        """Move q to the right: q * A(D) = A(D - T) * q, so each root grows by 1."""
        if self.shifted:
            return self
        return FactorizedQDE(self.left_scale, self.left_roots, self.right_scale,
                             tuple(sorted(s + 1 for s in self.right_roots)), True)

    def monic(self) -> "FactorizedQDE":
        return FactorizedQDE(Fraction(1), self.left_roots, self.right_scale / self.left_scale,
                             self.right_roots, self.shifted)

    def factor_strings(self) -> tuple[list[str], list[str]]:
        return _factor_list(self.left_roots), _factor_list(self.right_roots)

    def __str__(self) -> str:
        left = _render_side(self.left_scale, self.left_roots)
        right = _render_side(self.right_scale, self.right_roots)
        if self.shifted:
            return f"{left} - {right}*q"
        return f"{left} - q*{right}"


def _integer_factor(r: Fraction) -> tuple[int, str]:
    """(b, 'b*D - a*T') for the root r = a/b."""
    a, b = r.numerator, r.denominator
    if a == 0:
        return b, "D" if b == 1 else f"{b}*D"
    dpart = "D" if b == 1 else f"{b}*D"
    tpart = "T" if abs(a) == 1 else f"{abs(a)}*T"
    sign = "-" if a > 0 else "+"
    return b, f"({dpart} {sign} {tpart})"


def _factor_list(roots) -> list[str]:
    return [_integer_factor(r)[1] for r in roots]


def _render_side(scale: Fraction, roots) -> str:
    parts = []
    counts = Counter(roots)
    for r in sorted(counts):
        b, s = _integer_factor(r)
        scale = scale / Fraction(b) ** counts[r]
        if r == 0 and b == 1:
            parts.append("D" if counts[r] == 1 else f"D^{counts[r]}")
        else:
            parts.append(s if counts[r] == 1 else f"{s}^{counts[r]}")
    body = "*".join(parts)
    if not body:
        return str(scale)
    if scale == 1:
        return body
    return f"{scale}*{body}"


def build_PH(w: WeightSystem) -> FactorizedQDE:
    """The operator prod_i prod_{k<w_i} (w_i D - k T) - q prod_{k=1..d} (d D + k T), q moved right."""
    left_roots = []
    left_scale = Fraction(1)
    for wi in w.weights:
        left_scale *= Fraction(wi) ** wi
        left_roots.extend(Fraction(k, wi) for k in range(wi))
    d = w.degree
    raw = FactorizedQDE(left_scale, tuple(sorted(left_roots)), Fraction(d) ** d,
                        tuple(sorted(Fraction(-k, d) for k in range(1, d + 1))), shifted=False)
    return raw.shift()


@dataclass(frozen=True)
class Reduction:
    reduced: FactorizedQDE
    rank: int
    v: tuple[int, ...]
    cancelled: tuple[Fraction, ...]


def v_counts(w: WeightSystem) -> tuple[int, ...]:
    d = w.degree
    out = []
    for wi in w.weights:
        if d % wi:
            raise NonDivisibleWeights(f"weight {wi} does not divide {d}")
        m = d // wi
        out.append(sum(1 for k in range(1, d) if k % m == 0))
    return tuple(out)


def reduce_PH(P: FactorizedQDE, w: WeightSystem) -> Reduction:
    """Cancel the common linear factors of both sides; the rank is the remaining D-degree."""
    v = v_counts(w)
    P = P.shift()
    common = Counter(P.left_roots) & Counter(P.right_roots)
    left = Counter(P.left_roots) - common
    right = Counter(P.right_roots) - common
    reduced = FactorizedQDE(P.left_scale, tuple(sorted(left.elements())), P.right_scale,
                            tuple(sorted(right.elements())), True).monic()
    return Reduction(reduced, reduced.order, v, tuple(sorted(common.elements())))


@dataclass(frozen=True)
class Theta0Relation:
    charpoly: UPoly
    constant: Fraction
    expected_constant: Fraction
    low_exponent: int
    relation_holds: bool


def theta0_relation(reduced: FactorizedQDE, w: WeightSystem) -> Theta0Relation:
    """Set theta = 0 in the monic reduced operator: zeta^n - c q zeta^(d+n-w)."""
    red = reduced.monic()
    n, d = w.n, w.degree
    q = RatFunc.gen("q")
    top = len(red.left_roots)
    low = len(red.right_roots)
    coeffs = [Fraction(0)] * (top + 1)
    coeffs[top] = Fraction(1)
    coeffs[low] = coeffs[low] - red.right_scale * q
    poly = UPoly(coeffs, "zeta")
    expected = Fraction(d) ** d
    for wi in w.weights:
        expected /= Fraction(wi) ** wi
    holds = top == n and low == d + n - w.total and red.right_scale == expected
    return Theta0Relation(poly, red.right_scale, expected, low, holds)
