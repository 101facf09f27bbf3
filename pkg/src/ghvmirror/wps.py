"""Weighted projective spaces: normalization, smoothness tests, classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable


class NotNormalized(ValueError):
    pass


class NoPartition(ValueError):
    pass


class InvalidWeights(ValueError):
    pass


def _gcd_all(xs: Iterable[int]) -> int:
    return reduce(gcd, xs, 0)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [p for p in range(n + 1) if sieve[p]]


@dataclass(frozen=True)
class WeightSystem:
    """Weights (w_0 <= ... <= w_n) and a degree d; the weights are sorted on construction."""

    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        ws = tuple(sorted(int(w) for w in self.weights))
        if len(ws) < 3:
            raise InvalidWeights("need at least three weights (n >= 2)")
        if any(w <= 0 for w in ws) or int(self.degree) <= 0:
            raise InvalidWeights("weights and degree must be positive integers")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "degree", int(self.degree))

    @classmethod
    def parse(cls, weights: str, degree: int) -> "WeightSystem":
        return cls(tuple(int(x) for x in weights.split(",") if x.strip()), degree)

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def total(self) -> int:
        """w = sum of the weights."""
        return sum(self.weights)

    def is_normalized(self) -> bool:
        ws = self.weights
        return all(_gcd_all(ws[:i] + ws[i + 1:]) == 1 for i in range(len(ws)))

    def theorem_conditions(self) -> tuple[bool, bool, bool]:
        ws, d = self.weights, self.degree
        coprime = all(gcd(a, b) == 1 for a, b in combinations(ws, 2))
        divides = all(d % w == 0 for w in ws)
        below = all(w < d for w in ws)
        return coprime, divides, below

    def satisfies_theorem(self) -> bool:
        return all(self.theorem_conditions())

    def __str__(self) -> str:
        return f"({','.join(map(str, self.weights))}; {self.degree})"


@dataclass(frozen=True)
class PrimeData:
    p: int
    m: int
    k: int
    q: int


@dataclass(frozen=True)
class SmoothnessReport:
    weights: WeightSystem
    normalized: bool
    general_position: bool
    theorem_conditions: tuple[bool, bool, bool]
    quasi_smooth_sufficient: bool
    smooth_by_qp: bool
    prime_table: tuple[PrimeData, ...]
    linear_cone: bool
    classification: str
    fano_index: int
    lemma_wiPR: bool

    @property
    def smooth(self) -> bool:
        """Smoothness certified by general position, quasi-smoothness and the q(p) test."""
        return self.general_position and self.quasi_smooth_sufficient and self.smooth_by_qp

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights.weights),
            "degree": self.weights.degree,
            "normalized": self.normalized,
            "general_position": self.general_position,
            "theorem_conditions": {
                "pairwise_coprime": self.theorem_conditions[0],
                "weights_divide_degree": self.theorem_conditions[1],
                "weights_below_degree": self.theorem_conditions[2],
            },
            "quasi_smooth_sufficient": self.quasi_smooth_sufficient,
            "smooth_by_qp": self.smooth_by_qp,
            "prime_table": [{"p": r.p, "m": r.m, "k": r.k, "q": r.q} for r in self.prime_table],
            "linear_cone": self.linear_cone,
            "smooth": self.smooth,
            "class": self.classification,
            "fano_index": self.fano_index,
            "lemma_wiPR": self.lemma_wiPR,
        }


def general_position(w: WeightSystem) -> bool:
    """Fletcher: the gcd of all weights but two divides d, and the weights are normalized."""
    ws, d = w.weights, w.degree
    if not w.is_normalized():
        return False
    idx = range(len(ws))
    for i, j in combinations(idx, 2):
        rest = [ws[k] for k in idx if k != i and k != j]
        if d % _gcd_all(rest) != 0:
            return False
    return True


def prime_table(w: WeightSystem) -> tuple[PrimeData, ...]:
    """(m(p), k(p), q(p)) for the primes dividing some weight or the degree."""
    ws, d, n = w.weights, w.degree, w.n
    rows = []
    for p in primes_up_to(max(max(ws), d)):
        m = sum(1 for x in ws if x % p == 0)
        k = 1 if d % p == 0 else 0
        if m == 0 and k == 0:
            continue
        rows.append(PrimeData(p, m, k, n - m + k))
    return tuple(rows)


def classify(w: WeightSystem) -> str:
    if w.degree < w.total:
        return "Fano"
    if w.degree == w.total:
        return "CalabiYau"
    return "GeneralType"


def analyze(w: WeightSystem) -> SmoothnessReport:
    if not w.is_normalized():
        raise NotNormalized(f"weights {w.weights} are not normalized")
    table = prime_table(w)
    return SmoothnessReport(
        weights=w,
        normalized=True,
        general_position=general_position(w),
        theorem_conditions=w.theorem_conditions(),
        quasi_smooth_sufficient=all(w.degree % x == 0 for x in w.weights),
        smooth_by_qp=all(r.q >= w.n for r in table),
        prime_table=table,
        linear_cone=w.degree in w.weights,
        classification=classify(w),
        fano_index=w.total - w.degree,
        lemma_wiPR=w.n + w.degree > w.total,
    )


@dataclass(frozen=True)
class Partition:
    r: int
    ones: int
    ones_bound_ok: bool
    # indices (into the sorted weights) of the suffix summing to d
    suffix: tuple[int, ...] = field(default=())


def ghv_partition(w: WeightSystem) -> Partition:
    """The r in {0..n-2} with d = w_{r+1} + ... + w_n, for sorted weights."""
    ws, d, n = w.weights, w.degree, w.n
    ones = sum(1 for x in ws if x == 1)
    bound_ok = ones >= w.total - d + 1
    for r in range(n - 1):
        if sum(ws[r + 1:]) == d:
            return Partition(r, ones, bound_ok, tuple(range(r + 1, n + 1)))
    raise NoPartition(f"no suffix of {ws} sums to {d}")


def normalized_systems(n: int, max_weight: int, max_degree: int,
                       coprime_only: bool = False) -> Iterable[WeightSystem]:
    """All normalized WeightSystems with n+1 weights in [1, max_weight] and d <= max_degree."""

    def tuples(prefix: list[int], start: int):
        if len(prefix) == n + 1:
            yield tuple(prefix)
            return
        for x in range(start, max_weight + 1):
            if coprime_only and x > 1 and any(gcd(x, y) != 1 for y in prefix):
                continue
            prefix.append(x)
            yield from tuples(prefix, x)
            prefix.pop()

    for ws in tuples([], 1):
        if not all(_gcd_all(ws[:i] + ws[i + 1:]) == 1 for i in range(len(ws))):
            continue
        for d in range(1, max_degree + 1):
            yield WeightSystem(ws, d)
