"""Monomial orders as sort keys on exponent tuples.

The leading monomial of a polynomial is the exponent with the largest key.
Global kinds are well-orders on N^n; the local kind ``ds`` ranks lower total
degree higher, so 1 beats every nonconstant monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

GLOBAL_KINDS = ("grevlex", "wgrevlex", "lex", "block")
LOCAL_KINDS = ("ds",)


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    weights: Optional[tuple[Fraction, ...]] = None
    # for kind == "block": number of leading variables eliminated first
    block: int = 0
    base: Optional["MonomialOrder"] = None

    def __post_init__(self):
        if self.kind not in GLOBAL_KINDS + LOCAL_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wgrevlex":
            if self.weights is None or any(w <= 0 for w in self.weights):
                raise ValueError("weighted order needs positive weights")
        if self.kind == "block" and (self.block <= 0 or self.base is None):
            raise ValueError("block order needs a block size and a base order")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def weighted(cls, weights: Sequence) -> "MonomialOrder":
        return cls("wgrevlex", tuple(Fraction(w) for w in weights))

    @classmethod
    def local(cls) -> "MonomialOrder":
        return cls("ds")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def eliminate_first(cls, k: int, base: "MonomialOrder") -> "MonomialOrder":
        """Block order: the first k variables dominate, ties broken by base on the rest."""
        return cls("block", block=k, base=base)

    @property
    def is_local(self) -> bool:
        return self.kind in LOCAL_KINDS

    @property
    def is_global(self) -> bool:
        return not self.is_local

    def key_function(self) -> Callable[[tuple], tuple]:
        kind = self.kind
        if kind == "grevlex":
            return lambda e: (sum(e), tuple(-x for x in reversed(e)))
        if kind == "wgrevlex":
            w = self.weights
            return lambda e: (sum(a * b for a, b in zip(w, e)), sum(e), tuple(-x for x in reversed(e)))
        if kind == "lex":
            return lambda e: e
        if kind == "ds":
            return lambda e: (-sum(e), tuple(-x for x in reversed(e)))
        k, base = self.block, self.base.key_function()
        return lambda e: (sum(e[:k]), tuple(-x for x in reversed(e[:k])), base(e[k:]))

    def key(self, e: tuple) -> tuple:
        return self.key_function()(e)

    def extend(self, extra_weights: Sequence = ()) -> "MonomialOrder":
        """Same order on a ring with extra trailing variables (weights appended)."""
        if self.kind == "wgrevlex":
            return MonomialOrder.weighted(tuple(self.weights) + tuple(extra_weights))
        return self
