"""Brieskorn / Gauss-Manin reduction by graded relation search.

Classes of n-forms g * theta^k * omega live in G, the quotient of
Omega[theta, theta^-1] by the relations

    [(xi_i f) * g * omega] = theta * [xi_i(g) * omega]

with xi_i = u_i d/du_i on the torus (omega = du/u) and xi_i = d/dx_i on
affine space (omega = dx).  To express a section in a basis we search, inside
a finite box of monomials, for an exact linear combination of relation
instances and basis multiples that equals it.  The relation coefficients are
returned as a certificate that replays to zero.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .algebra.laurent import LaurentPoly
from .algebra.matrix import (cayley_hamilton_holds, charpoly, is_zero, matadd, matmul,
                             matpow, scale, transpose)
from .algebra.ratfunc import RatFunc
from .algebra.upoly import UPoly
from .ghv import GHVModel, build_model
from .qde import build_PH, reduce_PH, theta0_relation
from .wps import WeightSystem

THETA = "T"


class NonStabilizing(RuntimeError):
    """No representation was found inside the largest search box."""

    def __init__(self, msg: str, residual: Optional["GMSection"] = None):
        super().__init__(msg)
        self.residual = residual


class BasisNotIndependent(ValueError):
    def __init__(self, msg: str, relation: Optional[dict] = None):
        super().__init__(msg)
        self.relation = relation


class Frame(Enum):
    TORUS = "torus"
    AFFINE = "affine"


# sections -----------------------------------------------------------------------


@dataclass(frozen=True)
class GMSection:
    """sum_k levels[k] * theta^k * omega, each level a LaurentPoly in the context variables."""

    terms: tuple[tuple[int, LaurentPoly], ...]
    frame: Frame = Frame.TORUS

    @classmethod
    def of(cls, poly: LaurentPoly, level: int = 0, frame: Frame = Frame.TORUS) -> "GMSection":
        return cls.from_levels({level: poly}, frame)

    @classmethod
    def from_levels(cls, levels: Mapping[int, LaurentPoly], frame: Frame = Frame.TORUS) -> "GMSection":
        return cls(tuple(sorted((k, p) for k, p in levels.items() if not p.is_zero())), frame)

    @property
    def levels(self) -> dict[int, LaurentPoly]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "GMSection", sign: int) -> "GMSection":
        if other.frame != self.frame:
            raise ValueError("sections in different frames")
        out = self.levels
        for k, p in other.terms:
            p = p if sign > 0 else -p
            out[k] = out[k] + p if k in out else p
        return GMSection.from_levels(out, self.frame)

    def __add__(self, other: "GMSection") -> "GMSection":
        return self._combine(other, 1)

    def __sub__(self, other: "GMSection") -> "GMSection":
        return self._combine(other, -1)

    def __neg__(self) -> "GMSection":
        return GMSection(tuple((k, -p) for k, p in self.terms), self.frame)

    def scale(self, c) -> "GMSection":
        return GMSection.from_levels({k: p.scale(c) for k, p in self.terms}, self.frame)

    def mul(self, g: LaurentPoly) -> "GMSection":
        return GMSection.from_levels({k: p * g for k, p in self.terms}, self.frame)

    def theta_shift(self, j: int) -> "GMSection":
        return GMSection(tuple((k + j, p) for k, p in self.terms), self.frame)

    def vector(self) -> dict:
        """Sparse vector keyed by (exponent, theta level)."""
        return {(e, k): c for k, p in self.terms for e, c in p.terms.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, p in self.terms:
            t = "" if k == 0 else (f"*{THETA}" if k == 1 else f"*{THETA}^({k})" if k < 0 else f"*{THETA}^{k}")
            parts.append(f"({p}){t}")
        return " + ".join(parts)


@dataclass(frozen=True)
class BasisSpec:
    sections: tuple[GMSection, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.sections:
            raise ValueError("a basis needs at least one section")
        if len({s.frame for s in self.sections}) != 1:
            raise ValueError("basis sections must share a frame")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{j}" for j in range(len(self.sections))))

    def __len__(self) -> int:
        return len(self.sections)


# context ------------------------------------------------------------------------


@dataclass(frozen=True)
class GMContext:
    """The function f and how to read its variables.

    ``f`` lives in ``space vars + (param,)`` when a parameter is present; the
    parameter is a coefficient variable (no xi_i along it).  ``grading`` gives
    a weight per variable (parameter included) making f homogeneous of degree
    1, with theta of degree 1; None disables degree filtering.
    """

    f: LaurentPoly
    frame: Frame = Frame.TORUS
    param: Optional[str] = None
    grading: Optional[tuple[Fraction, ...]] = None
    _dfs: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.param is not None and self.f.vars[-1] != self.param:
            raise ValueError("the parameter must be the last variable")
        if self.grading is not None:
            g = tuple(Fraction(x) for x in self.grading)
            object.__setattr__(self, "grading", g)
            if any(self.degree(e) != 1 for e in self.f.terms):
                raise ValueError("f is not homogeneous of degree 1 for the given grading")
        dfs = []
        for i in range(self.nspace):
            d = self.f.xi(i) if self.frame is Frame.TORUS else self.f.diff(i)
            dfs.append(d)
        object.__setattr__(self, "_dfs", tuple(dfs))

    @property
    def vars(self) -> tuple[str, ...]:
        return self.f.vars

    @property
    def nspace(self) -> int:
        return len(self.f.vars) - (1 if self.param else 0)

    def degree(self, e: Sequence[int]) -> Fraction:
        return sum((g * a for g, a in zip(self.grading, e)), Fraction(0))

    def df(self, i: int) -> LaurentPoly:
        """xi_i f (torus) or d f / d x_i (affine)."""
        return self._dfs[i]

    def poly(self, p) -> LaurentPoly:
        if isinstance(p, LaurentPoly):
            if p.vars != self.vars:
                return p.embed(self.vars)
            return p
        return LaurentPoly.const(p, self.vars)

    def section(self, p, level: int = 0) -> GMSection:
        return GMSection.of(self.poly(p), level, self.frame)

    def relation(self, exp: Sequence[int], i: int, k: int, c=Fraction(1)) -> GMSection:
        """theta^k [ (xi_i f) x^e - theta xi_i(x^e) ], scaled by c."""
        exp = tuple(exp)
        mono = LaurentPoly.monomial(exp, self.vars, c)
        first = self.df(i) * mono
        a = exp[i]
        if self.frame is Frame.TORUS:
            second = mono.scale(a)
        else:
            e2 = list(exp)
            e2[i] -= 1
            second = LaurentPoly.monomial(e2, self.vars, c * a) if a else LaurentPoly.zero(self.vars)
        return GMSection.from_levels({k: first}, self.frame) - GMSection.from_levels({k + 1: second}, self.frame)

    def section_degree(self, s: GMSection) -> Optional[Fraction]:
        if self.grading is None:
            return None
        degs = {self.degree(e) + k for k, p in s.terms for e in p.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_parts(self, s: GMSection) -> list[GMSection]:
        if self.grading is None or s.is_zero():
            return [s]
        parts: dict = {}
        for k, p in s.terms:
            for e, c in p.terms.items():
                parts.setdefault(self.degree(e) + k, {}).setdefault(k, {})[e] = c
        return [GMSection.from_levels({k: LaurentPoly(self.vars, t) for k, t in lv.items()}, self.frame)
                for _, lv in sorted(parts.items())]


def infer_grading(f: LaurentPoly) -> Optional[tuple[Fraction, ...]]:
    """Some weight vector making every monomial of f have degree 1, or None."""
    from .algebra.matrix import row_echelon

    exps = list(f.terms)
    if not exps:
        return None
    n = f.nvars
    aug = [[Fraction(a) for a in e] + [Fraction(1)] for e in exps]
    R, piv = row_echelon(aug)
    if n in piv:
        return None
    g = [Fraction(0)] * n
    for row, c in zip(R, piv):
        g[c] = row[n]
    return tuple(g)


# sparse elimination ----------------------------------------------------------------


class _Echelon:
    """Column echelon form with forward-only reduction and combination tracking."""

    def __init__(self, weight: Optional[dict] = None):
        # pivots prefer rows touched by few columns (less fill-in)
        self.weight = weight or {}
        self.pivot_of: dict = {}
        self.vecs: list[dict] = []
        self.combos: list[dict] = []

    def reduce(self, vec: dict, combo: dict) -> tuple[dict, dict]:
        vec = dict(vec)
        combo = dict(combo)
        heap = [self.pivot_of[k] for k in vec if k in self.pivot_of]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            j = heapq.heappop(heap)
            key = self.vecs[j]["__pivot__"]
            c = vec.get(key)
            if not c:
                continue
            for k, v in self.vecs[j].items():
                if k == "__pivot__":
                    continue
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                    idx = self.pivot_of.get(k)
                    if idx is not None and idx not in seen:
                        seen.add(idx)
                        heapq.heappush(heap, idx)
                else:
                    vec.pop(k, None)
            for k, v in self.combos[j].items():
                nv = combo.get(k, 0) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def insert(self, vec: dict, combo: dict) -> Optional[dict]:
        """Add a column; returns the dependency combination if it reduces to zero."""
        vec, combo = self.reduce(vec, combo)
        if not vec:
            return combo
        key = min(vec, key=lambda r: (self.weight.get(r, 0), r))
        inv = 1 / vec[key]
        vec = {k: v * inv for k, v in vec.items()}
        vec["__pivot__"] = key
        combo = {k: v * inv for k, v in combo.items()}
        self.pivot_of[key] = len(self.vecs)
        self.vecs.append(vec)
        self.combos.append(combo)
        return None


# reduction -------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationTerm:
    exponent: tuple[int, ...]
    index: int
    level: int
    coeff: Fraction


@dataclass(frozen=True)
class GMReduction:
    # coordinates[j] is a LaurentPoly in (T,) or (T, param)
    coordinates: tuple[LaurentPoly, ...]
    certificate: tuple[RelationTerm, ...]
    margin: int
    columns: int

    def theta_part(self, j: int, k: int) -> LaurentPoly:
        """Coefficient of theta^k in coordinate j, as a polynomial in the parameter (if any)."""
        c = self.coordinates[j]
        out = {e[1:]: v for e, v in c.terms.items() if e[0] == k}
        return LaurentPoly(c.vars[1:], out)

    def theta_levels(self) -> set[int]:
        return {e[0] for c in self.coordinates for e in c.terms}


def coordinate_vars(ctx: GMContext) -> tuple[str, ...]:
    return (THETA, ctx.param) if ctx.param else (THETA,)


def combination(ctx: GMContext, coords: Sequence[LaurentPoly], basis: BasisSpec) -> GMSection:
    """sum_j coords[j](theta, param) * basis_j."""
    total = GMSection((), ctx.frame)
    for c, b in zip(coords, basis.sections):
        for e, v in c.terms.items():
            piece = b.theta_shift(e[0]).scale(v)
            if ctx.param:
                piece = piece.mul(LaurentPoly.monomial((0,) * ctx.nspace + (e[1],), ctx.vars))
            total = total + piece
    return total


def replay(ctx: GMContext, s: GMSection, basis: Optional[BasisSpec], red: GMReduction) -> GMSection:
    """s - sum coords*basis - sum certificate relations; zero for a sound reduction."""
    out = s
    if basis is not None:
        out = out - combination(ctx, red.coordinates, basis)
    for t in red.certificate:
        out = out - ctx.relation(t.exponent, t.index, t.level, t.coeff)
    return out


def default_depth(ctx: GMContext, s: GMSection) -> int:
    if ctx.grading is None or s.is_zero():
        return 8
    deg = max(abs(ctx.degree(e) + k) for k, p in s.terms for e in p.terms)
    return int(2 * deg) + 4


def _box(ctx: GMContext, sections: Iterable[GMSection], margin: int):
    n = ctx.nspace
    lo = [0] * n
    hi = [0] * n
    plo, phi = 0, 0
    for s in sections:
        for _, p in s.terms:
            for e in p.terms:
                for i in range(n):
                    lo[i] = min(lo[i], e[i])
                    hi[i] = max(hi[i], e[i])
                if ctx.param:
                    plo, phi = min(plo, e[-1]), max(phi, e[-1])
    for e in ctx.f.terms:
        if ctx.param:
            plo, phi = min(plo, e[-1]), max(phi, e[-1])
    lo = [a - margin for a in lo]
    hi = [b + margin for b in hi]
    if ctx.frame is Frame.AFFINE:
        lo = [max(0, a) for a in lo]
    return lo, hi, plo - margin, phi + margin


def _param_candidates(ctx: GMContext, base_deg: Fraction, target: Optional[Fraction], plo: int, phi: int):
    """Parameter exponents l in [plo, phi] with base_deg + l*g_param == target (all if ungraded)."""
    if target is None:
        return range(plo, phi + 1)
    if ctx.param is None:
        return (0,) if base_deg == target else ()
    gp = ctx.grading[-1]
    if gp == 0:
        return range(plo, phi + 1) if base_deg == target else ()
    l = (target - base_deg) / gp
    if l.denominator != 1 or not (plo <= l <= phi):
        return ()
    return (int(l),)


def _columns(ctx: GMContext, s: GMSection, basis: Optional[BasisSpec], depth: int, margin: int) -> list:
    """(id, sparse vector) for every relation instance and basis multiple of the right degree in the box."""
    delta = ctx.section_degree(s)
    bsecs = basis.sections if basis is not None else ()
    lo, hi, plo, phi = _box(ctx, (s,) + tuple(bsecs), margin)
    levels_s = [k for k, _ in s.terms] or [0]
    klo, khi = min(levels_s) - depth, max(levels_s) + depth
    n = ctx.nspace
    cols = []
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for a in product(*ranges):
        deg_a = ctx.degree(a + (0,) * (len(ctx.vars) - n)) if ctx.grading is not None else None
        for i in range(n):
            if ctx.frame is Frame.TORUS:
                shift = Fraction(1)
            else:
                shift = 1 - ctx.grading[i] if ctx.grading is not None else None
            for k in range(klo, khi):
                if delta is None:
                    cands = range(plo, phi + 1) if ctx.param else (0,)
                else:
                    cands = _param_candidates(ctx, deg_a + shift + k, delta, plo, phi)
                for l in cands:
                    exp = a + ((l,) if ctx.param else ())
                    vec = ctx.relation(exp, i, k).vector()
                    if vec:
                        cols.append((("r", exp, i, k), vec))
    for j, b in enumerate(bsecs):
        bdeg = ctx.section_degree(b)
        for k in range(klo, khi + 1):
            if delta is None:
                cands = range(plo, phi + 1) if ctx.param else (0,)
            else:
                cands = _param_candidates(ctx, bdeg + k, delta, plo, phi)
            for l in cands:
                col = b.theta_shift(k)
                if ctx.param:
                    col = col.mul(LaurentPoly.monomial((0,) * n + (l,), ctx.vars))
                cols.append((("b", j, k, l), col.vector()))
    return cols


def _prune(cols: list, target_rows: set) -> tuple[list, dict]:
    """Drop columns that own a row no other column (nor the target) touches; such a
    column has coefficient zero in every representation.  Returns the survivors and
    the row counts among them."""
    alive = [True] * len(cols)
    rows: dict = {}
    for idx, (_, vec) in enumerate(cols):
        for r in vec:
            rows.setdefault(r, []).append(idx)
    count = {r: len(v) for r, v in rows.items()}
    stack = [r for r, c in count.items() if c == 1 and r not in target_rows]
    while stack:
        r = stack.pop()
        if count[r] != 1:
            continue
        owner = next((i for i in rows[r] if alive[i]), None)
        if owner is None:
            continue
        alive[owner] = False
        for r2 in cols[owner][1]:
            count[r2] -= 1
            if count[r2] == 1 and r2 not in target_rows:
                stack.append(r2)
    kept = [c for c, ok in zip(cols, alive) if ok]
    return kept, count


def _solve_homogeneous(ctx: GMContext, s: GMSection, basis: Optional[BasisSpec], depth: int, margin: int):
    cols = _columns(ctx, s, basis, depth, margin)
    target = s.vector()
    kept, count = _prune(cols, set(target))
    # pruning may only remove relation columns or basis multiples forced to zero
    E = _Echelon(count)
    for cid, vec in kept:
        if cid[0] == "r":
            E.insert(vec, {cid: Fraction(1)})
    for cid, vec in kept:
        if cid[0] == "b":
            dep = E.insert(vec, {cid: Fraction(1)})
            if dep is not None:
                _, j, k, _ = cid
                raise BasisNotIndependent(
                    f"basis element {basis.labels[j]} * T^{k} depends on the others modulo relations", dep)
    vec, combo = E.reduce(target, {})
    if vec:
        return None, len(cols)
    # reduce() subtracts pivot columns, so s is the combination -combo
    return {k: -v for k, v in combo.items()}, len(cols)


def gm_reduce(ctx: GMContext, s: GMSection, basis: Optional[BasisSpec],
              max_depth: Optional[int] = None, max_margin: int = 3) -> GMReduction:
    """Coordinates of s in the basis (over Q[theta, theta^-1, param^+-1]) with a relation certificate.

    ``basis`` None tests membership in the relation submodule.  The search box
    grows from the support hull of the inputs by margins 0..max_margin; if none
    succeeds, NonStabilizing is raised.
    """
    if s.frame != ctx.frame:
        raise ValueError("section frame differs from the context frame")
    if basis is not None:
        for b in basis.sections:
            if ctx.grading is not None and ctx.section_degree(b) is None:
                raise ValueError("basis sections must be homogeneous")
    nb = len(basis) if basis is not None else 0
    cvars = coordinate_vars(ctx)
    coords = [dict() for _ in range(nb)]
    cert: list[RelationTerm] = []
    used_margin, total_cols = 0, 0
    for part in ctx.homogeneous_parts(s):
        if part.is_zero():
            continue
        depth = max_depth if max_depth is not None else default_depth(ctx, part)
        sol = None
        for margin in range(max_margin + 1):
            sol, ncols = _solve_homogeneous(ctx, part, basis, depth, margin)
            total_cols += ncols
            if sol is not None:
                used_margin = max(used_margin, margin)
                break
        if sol is None:
            raise NonStabilizing(f"no representation within margin {max_margin} and depth {depth}", part)
        for key, v in sol.items():
            if key[0] == "b":
                _, j, k, l = key
                ck = (k, l) if ctx.param else (k,)
                coords[j][ck] = coords[j].get(ck, 0) + v
            else:
                _, exp, i, k = key
                cert.append(RelationTerm(exp, i, k, v))
    cert.sort(key=lambda t: (t.level, t.index, t.exponent))
    return GMReduction(tuple(LaurentPoly(cvars, c) for c in coords), tuple(cert), used_margin, total_cols)


def in_relation_module(ctx: GMContext, s: GMSection, max_depth: Optional[int] = None,
                       max_margin: int = 3) -> Optional[GMReduction]:
    """A certificate that s is zero in G, or None if none is found in the search box."""
    try:
        return gm_reduce(ctx, s, None, max_depth, max_margin)
    except NonStabilizing:
        return None


# connection matrices -------------------------------------------------------------------


def model_context(m: GHVModel) -> GMContext:
    """Torus context for the Q-form; the parameter is named q when q = Q."""
    f = m.f_Q
    if m.wn == 1:
        f = f.rename(f.vars[:-1] + ("q",))
    return GMContext(f, Frame.TORUS, f.vars[-1], f.grading)


def quadric_basis(ctx: GMContext, n: int) -> BasisSpec:
    """eps = ([w0], [u1 w0], ..., [u1..u_{n-2} w0], 2[u_{n-1} w0])."""
    m = n - 1
    secs = []
    labels = []
    for j in range(n - 1):
        e = [1] * j + [0] * (m - j) + [0]
        secs.append(ctx.section(LaurentPoly.monomial(e, ctx.vars)))
        labels.append("eps" + str(j))
    e = [0] * (m - 1) + [1, 0]
    secs.append(ctx.section(LaurentPoly.monomial(e, ctx.vars, Fraction(2))))
    labels.append("eps" + str(n - 1))
    return BasisSpec(tuple(secs), tuple(labels))


def theta_d_theta_image(ctx: GMContext, s: GMSection) -> GMSection:
    """theta^2 nabla_{d/dtheta} of sum w_i theta^i = sum f w_i theta^i - sum i w_i theta^(i+1)."""
    out = s.mul(ctx.f)
    for k, p in s.terms:
        if k:
            out = out - GMSection.of(p.scale(k), k + 1, ctx.frame)
    return out


def param_image(ctx: GMContext, s: GMSection, factor=Fraction(1)) -> GMSection:
    """factor * theta nabla_{P d/dP}, P the parameter: sum P d_P(w_i) theta^(i+1) - sum P d_P f w_i theta^i."""
    ip = len(ctx.vars) - 1
    out = GMSection((), ctx.frame)
    for k, p in s.terms:
        out = out + GMSection.of(p.xi(ip), k + 1, ctx.frame)
    out = out - s.mul(ctx.f.xi(ip))
    return out.scale(factor)


def _poly_to_ratfunc(p: LaurentPoly, var: Optional[str]):
    if var is None:
        return p.constant_coeff() if not p.is_zero() else Fraction(0)
    if p.is_zero():
        return RatFunc.from_poly([Fraction(0)], var)
    lo = min(e[0] for e in p.terms)
    hi = max(e[0] for e in p.terms)
    if lo < 0:
        num = [Fraction(0)] * (hi - lo + 1)
        for e, c in p.terms.items():
            num[e[0] - lo] = c
        return RatFunc.from_poly(num, var) / RatFunc.gen(var) ** (-lo)
    coeffs = [Fraction(0)] * (hi + 1)
    for e, c in p.terms.items():
        coeffs[e[0]] = c
    return RatFunc.from_poly(coeffs, var)


@dataclass(frozen=True)
class ConnectionPair:
    A0: list
    A1: list
    Omega0: list
    Omega1: list
    # theta-levels outside {0, 1} found in either matrix; empty for a Birkhoff form
    extra_levels: tuple[int, ...]
    var: str
    reductions: tuple[GMReduction, ...] = field(default=(), repr=False)


def connection_matrices(m: GHVModel, basis: Optional[BasisSpec] = None,
                        ctx: Optional[GMContext] = None, max_depth: Optional[int] = None) -> ConnectionPair:
    """Matrices of theta^2 nabla_theta (A0 + theta A1) and theta nabla_{q d/dq} (Omega0 + theta Omega1).

    Column j holds the coordinates of the image of basis element j.
    """
    ctx = ctx or model_context(m)
    if basis is None:
        basis = quadric_basis(ctx, m.n)
    var = ctx.param
    N = len(basis)
    reds = []
    cols_A, cols_O = [], []
    for b in basis.sections:
        ra = gm_reduce(ctx, theta_d_theta_image(ctx, b), basis, max_depth)
        ro = gm_reduce(ctx, param_image(ctx, b, Fraction(1, m.wn)), basis, max_depth)
        reds += [ra, ro]
        cols_A.append(ra)
        cols_O.append(ro)
    extra = set()
    for r in reds:
        extra |= r.theta_levels() - {0, 1}

    def mat(cols, k):
        M = [[None] * N for _ in range(N)]
        for j, r in enumerate(cols):
            for i in range(N):
                M[i][j] = _poly_to_ratfunc(r.theta_part(i, k), var)
        return M

    return ConnectionPair(mat(cols_A, 0), mat(cols_A, 1), mat(cols_O, 0), mat(cols_O, 1),
                          tuple(sorted(extra)), var, tuple(reds))


@dataclass(frozen=True)
class EulerCheck:
    exponent: tuple[int, ...]
    lhs: tuple[LaurentPoly, ...]
    rhs: tuple[LaurentPoly, ...]
    holds: bool


def euler_check(m: GHVModel, exponent: Sequence[int], basis: Optional[BasisSpec] = None,
                    ctx: Optional[GMContext] = None) -> EulerCheck:
    """Compare theta^2 nabla_theta [u^a w0] with
    -(w-d) theta nabla_{(1/w_n) Q dQ} [u^a w0] + (sum_{i<=r} a_i + (w-d)/w_n sum_{i>r} a_i) theta [u^a w0],
    each side reduced on its own."""
    ctx = ctx or model_context(m)
    if basis is None:
        basis = quadric_basis(ctx, m.n)
    a = tuple(exponent)
    s = ctx.section(LaurentPoly.monomial(a + (0,), ctx.vars))
    lhs = gm_reduce(ctx, theta_d_theta_image(ctx, s), basis).coordinates
    c = Fraction(m.mu, m.wn)
    weight = sum(a[: m.r]) + c * sum(a[m.r:])
    conn = gm_reduce(ctx, param_image(ctx, s, Fraction(1, m.wn)), basis).coordinates
    own = gm_reduce(ctx, s, basis).coordinates
    cvars = coordinate_vars(ctx)
    theta = LaurentPoly.gen(THETA, cvars)
    rhs = tuple(x.scale(-m.mu) + (y * theta).scale(weight) for x, y in zip(conn, own))
    return EulerCheck(a, lhs, rhs, all(x == y for x, y in zip(lhs, rhs)))


# quadric Birkhoff problem ----------------------------------------------------------------


def expected_A0(n: int, var: str = "q") -> list:
    """(n-1) * (subdiagonal ones + 2q at (0, n-2) and (1, n-1))."""
    q = RatFunc.gen(var)
    zero = RatFunc.from_poly([Fraction(0)], var)
    M = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = zero + (n - 1)
    M[0][n - 2] = M[0][n - 2] + q * (2 * (n - 1))
    M[1][n - 1] = M[1][n - 1] + q * (2 * (n - 1))
    return M


def expected_quantum_matrix(n: int, var: str = "q") -> list:
    """Matrix of b o in the basis 1, b, .., b^{n-1} for the quadric: ones below the diagonal, 2q at (0,n-2), (1,n-1)."""
    return scale(expected_A0(n, var), Fraction(1, n - 1))


def _to_tq(M: Sequence[Sequence], var: str) -> list:
    """RatFunc polynomial entries -> LaurentPoly in (T, var)."""
    cv = (THETA, var)
    out = []
    for row in M:
        r = []
        for x in row:
            if isinstance(x, RatFunc):
                if not x.is_poly():
                    raise ValueError("entry is not a polynomial")
                num = x.num
                r.append(LaurentPoly(cv, {(0, k): c for k, c in enumerate(num.coeffs) if c != 0}))
            else:
                r.append(LaurentPoly.const(x, cv))
        out.append(r)
    return out


def _mat_apply(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v))), v[0] * 0) for i in range(len(M))]


def nabla_theta_dtheta(A0t, A1t, v):
    """Coordinates of nabla_{theta d/dtheta} applied to the section with coordinates v."""
    n = len(v)
    cv = v[0].vars
    Tinv = LaurentPoly.monomial((-1, 0), cv)
    Av0 = _mat_apply(A0t, v)
    Av1 = _mat_apply(A1t, v)
    return [v[i].xi(0) + Av0[i] * Tinv + Av1[i] for i in range(n)]


def integrability_residual(A0t, A1t, n: int) -> list:
    """theta d_theta B - q d_q A + [A, B] for A = A0/theta + A1, B = -(n-1)^-1 A0/theta."""
    cv = A0t[0][0].vars
    Tinv = LaurentPoly.monomial((-1, 0), cv)
    A = [[A0t[i][j] * Tinv + A1t[i][j] for j in range(n)] for i in range(n)]
    B = [[(A0t[i][j] * Tinv).scale(Fraction(-1, n - 1)) for j in range(n)] for i in range(n)]
    dB = [[B[i][j].xi(0) for j in range(n)] for i in range(n)]
    dA = [[A[i][j].xi(1) for j in range(n)] for i in range(n)]
    AB = matmul(A, B)
    BA = matmul(B, A)
    return [[dB[i][j] - dA[i][j] + AB[i][j] - BA[i][j] for j in range(n)] for i in range(n)]


def annihilator_residual(A0t, A1t, n: int, coefficient: Optional[Fraction] = None) -> list:
    """Q(eps0) for Q = theta^n nabla^n - c q theta nabla + 2q (n-1)^n theta, nabla = nabla_{theta d/dtheta}.

    The default c is 4 (n-1)^(n-1), the value forced by charpoly(A0) at theta = 0.
    """
    if coefficient is None:
        coefficient = Fraction(4 * (n - 1) ** (n - 1))
    cv = A0t[0][0].vars
    T = LaurentPoly.gen(THETA, cv)
    q = LaurentPoly.gen(cv[1], cv)
    zero = LaurentPoly.zero(cv)
    e0 = [LaurentPoly.const(1, cv)] + [zero] * (n - 1)
    v = e0
    for _ in range(n):
        v = nabla_theta_dtheta(A0t, A1t, v)
    once = nabla_theta_dtheta(A0t, A1t, e0)
    Tn = T ** n
    c1 = q * T * Fraction(coefficient)
    c2 = q * T * Fraction(2 * (n - 1) ** n)
    return [Tn * v[i] - c1 * once[i] + c2 * e0[i] for i in range(n)]


def printed_annihilator_coefficient(n: int) -> Fraction:
    """The theta*nabla coefficient 2 (n-1)^(n-1) n as printed; it differs from 4 (n-1)^(n-1) unless n = 2."""
    return Fraction(2 * (n - 1) ** (n - 1) * n)


def _eq_matrix(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


@dataclass
class BirkhoffReport:
    n: int
    pair: ConnectionPair
    A0_matches: bool
    A1_matches: bool
    omega_matches: bool
    no_theta_tail: bool
    charpoly: UPoly
    charpoly_matches: bool
    residue_nilpotent: bool
    annihilator_holds: bool
    pairing_A0: bool
    pairing_A1: bool
    quantum_matrix_matches: bool
    integrable: bool
    cayley_hamilton: bool
    certificates_replay: bool
    qde_charpoly_matches: bool
    euler_relation: Optional[bool] = None
    # the operator with the theta*nabla coefficient exactly as printed (informational)
    printed_annihilator_holds: Optional[bool] = None

    def checks(self) -> dict[str, bool]:
        out = {
            "A0": self.A0_matches,
            "A1": self.A1_matches,
            "Omega0 = -(n-1)^-1 A0": self.omega_matches,
            "no theta tail": self.no_theta_tail,
            "charpoly(A0)": self.charpoly_matches,
            "A0(0) nilpotent": self.residue_nilpotent,
            "annihilator of eps0": self.annihilator_holds,
            "pairing A0": self.pairing_A0,
            "pairing A1": self.pairing_A1,
            "quantum matrix": self.quantum_matrix_matches,
            "integrability": self.integrable,
            "Cayley-Hamilton": self.cayley_hamilton,
            "certificate replay": self.certificates_replay,
            "QDE charpoly": self.qde_charpoly_matches,
        }
        if self.euler_relation is not None:
            out["Euler relation on eps0"] = self.euler_relation
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def birkhoff_quadric_verify(n: int, check_euler: bool = True) -> BirkhoffReport:
    if n < 3:
        raise ValueError("need n >= 3")
    w = WeightSystem((1,) * (n + 1), 2)
    m = build_model(w)
    ctx = model_context(m)
    basis = quadric_basis(ctx, n)
    pair = connection_matrices(m, basis, ctx)
    var = pair.var
    exp_A0 = expected_A0(n, var)
    A1_exp = [[Fraction(i) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    A0_ok = _eq_matrix(pair.A0, exp_A0)
    A1_ok = _eq_matrix(pair.A1, A1_exp)
    omega_ok = _eq_matrix(pair.Omega0, scale(pair.A0, Fraction(-1, n - 1))) and all(
        x == 0 for row in pair.Omega1 for x in row)
    cp = charpoly(pair.A0)
    q = RatFunc.gen(var)
    # zeta^n - 4 (n-1)^(n-1) q zeta
    expected_cp = [0] * (n + 1)
    expected_cp[n] = 1
    expected_cp[1] = q * (-4 * (n - 1) ** (n - 1))
    cp_ok = cp.degree == n and all(cp[k] == expected_cp[k] for k in range(n + 1))
    A00 = [[x.specialize(0) if isinstance(x, RatFunc) else x for x in row] for row in pair.A0]
    nil = is_zero(matpow(A00, n))
    A0t = _to_tq(pair.A0, var)
    A1t = _to_tq(pair.A1, var)
    ann = all(x.is_zero() for x in annihilator_residual(A0t, A1t, n))
    ann_printed = all(x.is_zero() for x in annihilator_residual(A0t, A1t, n, printed_annihilator_coefficient(n)))
    J = [[Fraction(1) if i + j == n - 1 else Fraction(0) for j in range(n)] for i in range(n)]
    pA0 = _eq_matrix(matmul(transpose(pair.A0), J), matmul(J, pair.A0))
    pA1 = _eq_matrix(matadd(matmul(transpose(pair.A1), J), matmul(J, pair.A1)), scale(J, n - 1))
    qm = _eq_matrix(scale(pair.A0, Fraction(1, n - 1)), expected_quantum_matrix(n, var))
    integ = all(x.is_zero() for row in integrability_residual(A0t, A1t, n) for x in row)
    ch = all(cayley_hamilton_holds(M) for M in (pair.A0, pair.A1, pair.Omega0))
    replay_ok = True
    for j, b in enumerate(basis.sections):
        for red, sec in ((pair.reductions[2 * j], theta_d_theta_image(ctx, b)),
                         (pair.reductions[2 * j + 1], param_image(ctx, b, Fraction(1, m.wn)))):
            replay_ok = replay_ok and replay(ctx, sec, basis, red).is_zero()
    # the quantum matrix has the theta = 0 characteristic polynomial of the reduced QDE
    red = reduce_PH(build_PH(w), w)
    rel = theta0_relation(red.reduced, w)
    qcp = charpoly(scale(pair.A0, Fraction(1, n - 1)))
    qde_ok = all(qcp[k] == _as_q(rel.charpoly[k], var) for k in range(n + 1))
    lv = None
    if check_euler:
        lv = euler_check(m, (0,) * (n - 1), basis, ctx).holds
    return BirkhoffReport(n, pair, A0_ok, A1_ok, omega_ok, not pair.extra_levels, cp, cp_ok, nil, ann,
                          pA0, pA1, qm, integ, ch, replay_ok, qde_ok, lv, ann_printed)


def _as_q(c, var: str):
    """Rename the qde's q-variable to var for comparison."""
    if isinstance(c, RatFunc):
        return RatFunc(c.num, c.den, var=var) if c.var != var else c
    return c


# the wild example f = y(xy - 1) -------------------------------------------------------------


def basic_example_context() -> GMContext:
    vars = ("x", "y")
    f = LaurentPoly(vars, {(1, 2): Fraction(1), (0, 1): Fraction(-1)})
    return GMContext(f, Frame.AFFINE, None, (Fraction(-1), Fraction(1)))


@dataclass
class BasicExampleReport:
    bound: int
    recursion: bool
    recursion_failures: list
    vanishing: bool
    diagonal: bool
    tau_y: bool
    all_reduce: bool
    reduction_failures: list
    coefficients: dict
    certificates_replay: bool

    def checks(self) -> dict[str, bool]:
        return {
            "(2r-p)[x^r y^(p+1)] = r[x^(r-1) y^p]": self.recursion,
            "[y^(p+1)] = 0": self.vanishing,
            "tau[x^r y^(2r+1)] = [x^r y^(2r)]": self.diagonal,
            "tau[y] = [1]": self.tau_y,
            "monomials reduce to c tau^k [dx^dy]": self.all_reduce,
            "certificate replay": self.certificates_replay,
        }

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def basic_example_verify(degree_bound: int = 6) -> BasicExampleReport:
    ctx = basic_example_context()
    vars = ctx.vars
    basis = BasisSpec((ctx.section(1),), ("dx^dy",))

    def mono(a, b, c=Fraction(1)):
        return LaurentPoly.monomial((a, b), vars, c)

    replay_ok = True

    def member(sec: GMSection) -> bool:
        nonlocal replay_ok
        red = in_relation_module(ctx, sec)
        if red is None:
            return False
        replay_ok = replay_ok and replay(ctx, sec, None, red).is_zero()
        return True

    l1_fail = []
    for r in range(1, degree_bound + 1):
        for p in range(1, degree_bound + 1):
            sec = ctx.section(mono(r, p + 1, Fraction(2 * r - p)) - mono(r - 1, p, Fraction(r)))
            if not member(sec):
                l1_fail.append((r, p))
    van = all(member(ctx.section(mono(0, p + 1))) for p in range(1, degree_bound + 1))
    # tau [x^r y^(2r+1)] = [x^r y^(2r)]  <=>  [x^r y^(2r+1)] - theta [x^r y^(2r)] = 0
    l2 = all(member(ctx.section(mono(r, 2 * r + 1)) - ctx.section(mono(r, 2 * r), 1))
             for r in range(0, degree_bound + 1))
    tau_y = member(ctx.section(mono(0, 1)) - ctx.section(1, 1))
    fails = []
    coeffs = {}
    for a in range(degree_bound + 1):
        for b in range(degree_bound + 1):
            sec = ctx.section(mono(a, b))
            try:
                red = gm_reduce(ctx, sec, basis)
            except NonStabilizing:
                fails.append((a, b))
                continue
            replay_ok = replay_ok and replay(ctx, sec, basis, red).is_zero()
            c = red.coordinates[0]
            # a single power of theta, namely theta^(b-a) (degree count)
            if len(c.terms) > 1 or any(e[0] != b - a for e in c.terms):
                fails.append((a, b))
            coeffs[(a, b)] = c.terms.get((b - a,), Fraction(0))
    return BasicExampleReport(degree_bound, not l1_fail, l1_fail, van, l2, tau_y, not fails, fails, coeffs,
                              replay_ok)
