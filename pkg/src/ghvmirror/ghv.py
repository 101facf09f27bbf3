"""Laurent polynomial mirror models of smooth weighted hypersurfaces.

For weights w_0 = 1 <= ... <= w_n, degree d and a suffix J = {r+1, ..., n}
with sum_J w_j = d, the model in the variables u_1..u_{n-1} and Q is

    f = u_1 + ... + u_r + (u_{r+1} + ... + u_{n-1} + Q)^d / prod u_i^{w_i}

with q = Q^{w_n}.  The same function in the coordinates x_i (u_i = x_i for
i <= r, u_i = Q x_i otherwise) is x_1 + ... + x_r + q (x_{r+1} + ... + 1)^d /
prod x_i^{w_i}, the q-form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra.groebner import GroebnerBasis, NonFiniteQuotient
from .algebra.laurent import LaurentPoly
from .algebra.matrix import charpoly, rank as matrix_rank, solve
from .algebra.radical import RadicalRing
from .algebra.ratfunc import RatFunc
from .algebra.upoly import UPoly, cyclotomic
from .wps import NoPartition, WeightSystem, ghv_partition


class BadIndexSet(ValueError):
    pass


def x_names(m: int) -> tuple[str, ...]:
    if m <= 3:
        return ("x", "y", "z")[:m]
    return tuple(f"x{i}" for i in range(1, m + 1))


@dataclass(frozen=True)
class GHVModel:
    weights: WeightSystem
    r: int
    # weights attached to u_1..u_{n-1}, then the weight playing the role of w_n
    u_weights: tuple[int, ...]
    wn: int
    index_set: tuple[int, ...]
    f_Q: LaurentPoly
    f_q: LaurentPoly

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def mu(self) -> int:
        return self.weights.total - self.weights.degree

    @property
    def u_vars(self) -> tuple[str, ...]:
        return self.f_Q.vars[:-1]

    def grading(self) -> tuple[Fraction, ...]:
        return self.f_Q.grading

    def radicand(self) -> RatFunc:
        """d^d Q^{w_n} / prod w_i^{w_i}."""
        return RatFunc.gen("Q") ** self.wn * ghv_constant(self.weights)

    def f_param(self) -> LaurentPoly:
        """f as a Laurent polynomial in u with coefficients in Q(Q)."""
        return absorb_last_variable(self.f_Q, "Q")

    def f_at_q(self, q) -> LaurentPoly:
        """The x-coordinate form with q specialized to a rational number."""
        return self.f_q.map_coeffs(lambda c: c.specialize(q) if isinstance(c, RatFunc) else c)


def ghv_constant(w: WeightSystem) -> Fraction:
    c = Fraction(w.degree) ** w.degree
    for wi in w.weights:
        c /= Fraction(wi) ** wi
    return c


def absorb_last_variable(f: LaurentPoly, name: str) -> LaurentPoly:
    """Turn the last variable into the parameter of RatFunc coefficients."""
    gen = RatFunc.gen(name)
    out: dict = {}
    for e, c in f.terms.items():
        key = e[:-1]
        out[key] = out.get(key, 0) + c * gen ** e[-1]
    return LaurentPoly(f.vars[:-1], out, f.grading[:-1] if f.grading else None)


def build_model(w: WeightSystem, J: Optional[Sequence[int]] = None) -> GHVModel:
    """Model for the suffix partition, or for an explicit index set J (indices into sorted weights)."""
    ws, d, n = w.weights, w.degree, w.n
    if J is None:
        part = ghv_partition(w)
        J = part.suffix
    J = tuple(sorted(set(J)))
    if any(j < 0 or j > n for j in J):
        raise BadIndexSet(f"index set {J} out of range 0..{n}")
    if sum(ws[j] for j in J) != d:
        raise BadIndexSet(f"weights indexed by {J} do not sum to {d}")
    if len(J) < 2:
        raise BadIndexSet("index set must have at least two elements (else a linear cone)")
    outside = [i for i in range(n + 1) if i not in J]
    ones = [i for i in outside if ws[i] == 1]
    if not ones:
        raise BadIndexSet("need an index of weight 1 outside J")
    i0 = ones[0]
    j0 = J[-1]
    linear_idx = [i for i in outside if i != i0]
    numer_idx = [j for j in J if j != j0]
    r = len(linear_idx)
    u_weights = tuple(ws[i] for i in linear_idx + numer_idx)
    wn = ws[j0]
    m = n - 1
    uvars = tuple(f"u{i}" for i in range(1, m + 1))
    vars_Q = uvars + ("Q",)
    tail = Fraction(w.total - d, wn)
    grading = tuple([Fraction(1)] * r + [tail] * (m - r) + [tail])
    U = LaurentPoly.gens(vars_Q, grading)
    numer = U[-1]
    for i in range(r, m):
        numer = numer + U[i]
    denom_exp = [0] * (m + 1)
    for i, wi in enumerate(u_weights):
        denom_exp[i] = -wi
    f_Q = numer ** d * LaurentPoly.monomial(denom_exp, vars_Q, grading=grading)
    for i in range(r):
        f_Q = f_Q + U[i]
    f_Q = f_Q.with_grading(grading)

    xv = x_names(m)
    X = LaurentPoly.gens(xv)
    q = RatFunc.gen("q")
    s = LaurentPoly.const(1, xv)
    for i in range(r, m):
        s = s + X[i]
    f_q = s ** d * LaurentPoly.monomial([-wi for wi in u_weights], xv) * q
    for i in range(r):
        f_q = f_q + X[i]
    return GHVModel(w, r, u_weights, wn, J, f_Q, f_q)


def try_build_model(w: WeightSystem) -> Optional[GHVModel]:
    try:
        return build_model(w)
    except (NoPartition, BadIndexSet):
        return None


# homogeneity -------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneityResult:
    holds: bool
    euler_residual: LaurentPoly
    weighted_degree: Optional[Fraction]


def verify_homogeneity(m: GHVModel) -> HomogeneityResult:
    f = m.f_Q
    k = len(f.vars)
    c = Fraction(m.weights.total - m.weights.degree, m.wn)
    euler = f.xi(k - 1).scale(c)
    for i in range(k - 1):
        term = f.xi(i)
        euler = euler + (term if i < m.r else term.scale(c))
    residual = f - euler
    deg = f.homogeneous_degree()
    return HomogeneityResult(residual.is_zero() and deg == 1, residual, deg)


def epsilon_symmetry(m: GHVModel) -> bool:
    """f(eps u_1, .., eps u_r, u_{r+1}, .., Q) = eps f(u) in Q[eps]/Phi_e, e = w - d."""
    e = m.mu
    phi = cyclotomic(e, "eps")
    target = UPoly.monomial(Fraction(1), 1, "eps") % phi
    for exp in m.f_Q.terms:
        k = sum(exp[: m.r]) % e
        if UPoly.monomial(Fraction(1), k, "eps") % phi != target:
            return False
    return True


# critical data -------------------------------------------------------------------


@dataclass
class CriticalData:
    ring: RadicalRing
    points: list
    values: list
    expected_values: list
    count: int
    gradient_vanishes: bool
    values_match: bool
    nondegenerate: bool
    hessian_s: UPoly


def critical_points(m: GHVModel, ring: RadicalRing) -> list[list]:
    Q = RatFunc.gen("Q")
    pts = []
    for k in range(m.mu):
        pt = []
        for i, wi in enumerate(m.u_weights):
            if i < m.r:
                pt.append(ring.scaled(Fraction(wi), k))
            else:
                pt.append(ring.const(Q * Fraction(wi, m.wn)))
        pts.append(pt)
    return pts


def critical_data(m: GHVModel) -> CriticalData:
    e = m.mu
    ring = RadicalRing(e, m.radicand())
    f = m.f_param()
    nv = len(f.vars)
    pts = critical_points(m, ring)
    grads = [f.diff(i) for i in range(nv)]
    # gradient at c_0; the other points follow from the eps-symmetry
    grad_ok = all(g.evaluate(pts[0], one=ring.one).is_zero() for g in grads) and epsilon_symmetry(m)
    values = [f.evaluate(p, one=ring.one) for p in pts]
    expected = [ring.scaled(Fraction(e), k) for k in range(e)]
    values_ok = all(v == x for v, x in zip(values, expected))
    hess = [[grads[i].diff(j).evaluate(pts[0], one=ring.one) for j in range(nv)] for i in range(nv)]
    cp = charpoly(hess)
    det = cp.coeffs[0] if cp.coeffs else ring.const(0)
    if nv % 2:
        det = -det
    det = ring.one * det
    h = det.s_polynomial()
    rad = m.radicand()
    modulus = UPoly([-rad] + [Fraction(0)] * (e - 1) + [Fraction(1)], "s")
    nondeg = not h.is_zero() and h.gcd(modulus).degree == 0
    return CriticalData(ring, pts, values, expected, len(pts), grad_ok, values_ok, nondeg, h)


# Jacobian ring -------------------------------------------------------------------


@dataclass
class JacobianData:
    mu: int
    power_basis_ok: bool
    mult_f_matrix: list
    power_relation_ok: bool
    power_normal_form: LaurentPoly
    expected_power: RatFunc
    charpoly: UPoly
    eigenvalues_distinct: bool
    basis: GroebnerBasis
    # the full log-Jacobian quotient is infinite: a critical curve {S = 0} exists
    nonisolated_locus: bool


def numerator_form(m: GHVModel) -> LaurentPoly:
    """S = u_{r+1} + ... + u_{n-1} + Q as a polynomial in u over Q(Q)."""
    f = m.f_param()
    S = LaurentPoly.const(RatFunc.gen("Q"), f.vars)
    for i in range(m.r, len(f.vars)):
        S = S + LaurentPoly.gen(f.vars[i], f.vars)
    return S


def log_jacobian_basis(m: GHVModel, isolated: bool = True) -> GroebnerBasis:
    """Groebner basis of (u_i df/du_i); with ``isolated`` the locus S = 0 is removed."""
    f = m.f_param()
    gens = [f.xi(i) for i in range(len(f.vars))]
    return GroebnerBasis(gens, saturate=numerator_form(m) if isolated else None)


def has_nonisolated_locus(m: GHVModel) -> bool:
    try:
        log_jacobian_basis(m, isolated=False).dimension()
    except NonFiniteQuotient:
        return True
    return False


def jacobian_ring_data(m: GHVModel) -> JacobianData:
    """Jacobian ring of the isolated critical points.

    When r = 0 every partial derivative carries the factor S^(d-1), so the
    critical locus contains the curve S = 0 (where f vanishes).  The ring is
    then computed after saturating by S, and ``nonisolated_locus`` is set.
    """
    G = log_jacobian_basis(m)
    mu = G.dimension()
    f = m.f_param()
    one = LaurentPoly.const(1, f.vars)
    powers = [one]
    for _ in range(mu):
        powers.append(powers[-1] * f)
    cols = [G.coordinates(p) for p in powers[:mu]]
    basis_matrix = [[cols[j][i] for j in range(mu)] for i in range(mu)]
    independent = matrix_rank(basis_matrix) == mu
    # multiplication by f in the basis 1, f, .., f^{mu-1}
    mult = [[Fraction(0)] * mu for _ in range(mu)]
    for j in range(mu - 1):
        mult[j + 1][j] = Fraction(1)
    if independent:
        last = solve(basis_matrix, G.coordinates(powers[mu]))
        for i in range(mu):
            mult[i][mu - 1] = last[i]
    e = m.mu
    expected = m.radicand() * Fraction(e) ** e
    nf = G.normal_form(f ** e)
    relation_ok = nf == expected
    cp = charpoly(mult)
    distinct = cp.gcd(cp.derivative()).degree == 0 and cp.coeffs[0] != 0
    return JacobianData(mu, independent, mult, relation_ok, nf, expected, cp, distinct, G,
                        has_nonisolated_locus(m))
