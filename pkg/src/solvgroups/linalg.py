"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and len(A[0]) != len(B):
        raise ValueError("shape mismatch in matmul")
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def ext_gcd(v: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``(g, l)`` with ``g = gcd(v) >= 0`` and ``sum(v[i] * l[i]) == g``."""
    if len(v) == 0:
        raise ValueError("ext_gcd of an empty vector")
    g, coeffs = 0, [0] * len(v)
    for i, a in enumerate(v):
        g, s, t = _egcd(g, a)
        coeffs = [s * c for c in coeffs]
        coeffs[i] += t
    return g, coeffs


def _snf(A: Sequence[Sequence[int]]):
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)
    Vi = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V, Vi


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U A V == D`` and ``U``, ``V`` unimodular.

    ``D`` has the shape of ``A``, nonnegative diagonal entries and
    ``D[i][i] | D[i+1][i+1]``.
    """
    D, U, V, _ = _snf(A)
    return D, U, V


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, zeros included."""
    D = smith_normal_form(A)[0]
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def is_primitive(v: Sequence[int]) -> bool:
    return ext_gcd(v)[0] == 1


def is_rank2_direct_summand(A: Sequence[Sequence[int]]) -> bool:
    if len(A) != 2:
        raise ValueError(f"expected a 2-row matrix, got {len(A)} rows")
    if len(A[0]) < 2:
        return False
    return invariant_factors(A)[:2] == [1, 1]


def unimodular_completion(A: Sequence[Sequence[int]]) -> Matrix:
    """Extend the two rows of ``A`` to a matrix in ``GL_r(Z)``."""
    if not is_rank2_direct_summand(A):
        raise ValueError("rows do not span a rank-2 direct summand")
    _, _, _, Vi = _snf(A)
    # A = U^-1 [I2 | 0] V^-1, so rows 3.. of V^-1 complete the basis.
    C = [list(A[0]), list(A[1])] + [list(row) for row in Vi[2:]]
    if abs(determinant(C)) != 1:
        raise AssertionError("completion is not unimodular")
    return C


def inverse_unimodular(C: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a matrix of determinant +-1."""
    n = len(C)
    D, U, V, _ = _snf(C)
    if any(D[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    # U C V = I  =>  C^-1 = V U
    return matmul(V, U)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``A x = b``, or ``None`` if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    D, U, V, _ = _snf(A)
    c = [sum(u * bi for u, bi in zip(row, b)) for row in U]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return [sum(row[j] * y[j] for j in range(n)) for row in V]
