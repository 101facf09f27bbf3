"""Dense exact matrices as lists of rows.

Entries may be Fractions, RatFuncs or anything else closed under ring
operations and division by nonzero integers (Faddeev-LeVerrier only ever
divides by k = 1..n).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .upoly import UPoly

Matrix = list[list]


class NonSquare(ValueError):
    pass


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ValueError("ragged matrix")
    return rows, cols


def _square(M) -> int:
    r, c = shape(M)
    if r != c:
        raise NonSquare(f"matrix is {r}x{c}")
    return r


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, zero=Fraction(0)) -> Matrix:
    return [[zero] * c for _ in range(r)]


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A, B) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a != 0 and b != 0:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def matadd(A, B) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A, B) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(M, c) -> Matrix:
    return [[c * a for a in row] for row in M]


def entrywise(M, fn: Callable) -> Matrix:
    return [[fn(a) for a in row] for row in M]


def is_zero(M) -> bool:
    return all(a == 0 for row in M for a in row)


def trace(M):
    n = _square(M)
    acc = 0
    for i in range(n):
        acc = acc + M[i][i]
    return acc


def matpow(M, k: int) -> Matrix:
    n = _square(M)
    result = identity(n)
    for _ in range(k):
        result = matmul(result, M)
    return result


def charpoly(M, var: str = "zeta") -> UPoly:
    """det(zeta*I - M) by Faddeev-LeVerrier: monic of degree n."""
    n = _square(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = zeros(n, n)
    I = identity(n)
    for k in range(1, n + 1):
        # M_k = M * M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(M M_k) / k
        Mk = matadd(matmul(M, Mk), scale(I, coeffs[n - k + 1]))
        AM = matmul(M, Mk)
        coeffs[n - k] = -trace(AM) * Fraction(1, k)
    return UPoly(coeffs, var)


def det_bareiss(M):
    """Determinant by fraction-free elimination (exact division at each step)."""
    n = _square(M)
    if n == 0:
        return Fraction(1)
    A = [list(row) for row in M]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def eval_poly_at_matrix(p: UPoly, M) -> Matrix:
    """p(M) by Horner; used for Cayley-Hamilton checks."""
    n = _square(M)
    acc = zeros(n, n)
    I = identity(n)
    for c in reversed(p.coeffs):
        acc = matadd(matmul(acc, M), scale(I, c))
    return acc


def cayley_hamilton_holds(M) -> bool:
    return is_zero(eval_poly_at_matrix(charpoly(M), M))


def row_echelon(M) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over a field and the pivot columns."""
    A = [list(row) for row in M]
    rows, cols = shape(A) if A else (0, 0)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = Fraction(1) / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    return len(row_echelon(M)[1])


def solve(M, b) -> list:
    """Unique solution of M x = b; raises ValueError if singular or inconsistent."""
    rows, cols = shape(M)
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = row_echelon(aug)
    if cols in piv:
        raise ValueError("inconsistent linear system")
    if len(piv) != cols:
        raise ValueError("singular linear system")
    return [R[i][cols] for i in range(cols)]


def inverse(M) -> Matrix:
    n = _square(M)
    aug = [list(row) + e for row, e in zip(M, identity(n))]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in R[:n]]
