"""Exact integer matrix kernels: products, Bareiss determinants, Hermite and
Smith normal forms, integer kernels, characteristic polynomials.

Matrices are lists of row lists of Python ints throughout; nothing here ever
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matpow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def congruence(p: Matrix, g: Matrix) -> Matrix:
    """Return ``p^T g p``."""
    return matmul(matmul(transpose(p), g), p)


def det(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf_rows(rows: Matrix) -> Matrix:
    """Row-style Hermite normal form of the row span; zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out_row = 0
    for col in range(ncols):
        # gcd-combine every remaining row into m[out_row] on this column
        for r in range(out_row + 1, len(m)):
            a, b = m[out_row][col], m[r][col]
            if b == 0:
                continue
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            top = [x * u + y * v for u, v in zip(m[out_row], m[r])]
            bot = [-q * u + p * v for u, v in zip(m[out_row], m[r])]
            m[out_row], m[r] = top, bot
        if out_row < len(m) and m[out_row][col] != 0:
            if m[out_row][col] < 0:
                m[out_row] = [-u for u in m[out_row]]
            piv = m[out_row][col]
            for r in range(out_row):
                f = m[r][col] // piv
                if f:
                    m[r] = [u - f * v for u, v in zip(m[r], m[out_row])]
            out_row += 1
            if out_row == len(m):
                break
    return [r for r in m[:out_row]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def kernel_basis(a: Matrix, ncols: int | None = None) -> Matrix:
    """Integer basis (as rows) of ``{v in Z^n : a v = 0}``, in Hermite form.

    The kernel of an integer matrix is automatically saturated in ``Z^n``.
    """
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    # column operations on a, mirrored on an n x n unimodular tracker u
    work = [list(r) for r in a]
    u = identity(n)
    pivot_col = 0
    for row in range(len(work)):
        if pivot_col >= n:
            break
        for c in range(pivot_col + 1, n):
            x, y = work[row][pivot_col], work[row][c]
            if y == 0:
                continue
            g, s, t = xgcd(x, y)
            p, q = x // g, y // g
            for m in (work, u):
                for r in m:
                    r[pivot_col], r[c] = s * r[pivot_col] + t * r[c], -q * r[pivot_col] + p * r[c]
        if work[row][pivot_col] != 0:
            pivot_col += 1
    kernel = [[u[i][j] for i in range(n)] for j in range(pivot_col, n)]
    return hnf_rows(kernel)


def smith_diagonal(a: Matrix) -> list[int]:
    """Elementary divisors ``d1 | d2 | ...`` (nonzero only, ascending).

    Zero invariant factors are omitted; the caller compares ``len`` with the
    matrix size to detect degeneracy.
    """
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        done = False
                        break
            if not done:
                continue
            p = m[t][t]
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for r in m:
                        r[j] -= q * r[t]
                    if m[t][j]:
                        for r in m:
                            r[t], r[j] = r[j], r[t]
                        done = False
                        break
            if not done:
                continue
            # divisibility condition d_t | every remaining entry
            p = m[t][t]
            for i in range(t + 1, rows):
                if any(m[i][j] % p for j in range(t + 1, cols)):
                    m[t] = [x + y for x, y in zip(m[t], m[i])]
                    done = False
                    break
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def symmetric_pivots(g: Matrix) -> tuple[list[Fraction], int]:
    """Lagrange reduction of a symmetric matrix over Q.

    Returns the nonzero diagonal entries of a congruent diagonal form and the
    number of zero entries.
    """
    n = len(g)
    q = [[Fraction(x) for x in row] for row in g]
    active = list(range(n))
    pivots: list[Fraction] = []
    while active:
        k = next((i for i in active if q[i][i] != 0), None)
        if k is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and q[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            # replace basis vector i by e_i + e_j; its square is 2 q_ij != 0
            for r in range(n):
                q[r][i] += q[r][j]
            for c in range(n):
                q[i][c] += q[j][c]
            k = i
        d = q[k][k]
        pivots.append(d)
        active.remove(k)
        for i in active:
            f = q[i][k] / d
            if f:
                for j in active:
                    q[i][j] -= f * q[k][j]
        for i in active:
            q[i][k] = q[k][i] = Fraction(0)
    return pivots, n - len(pivots)


def ldl_positive(g: Matrix) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact ``q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2`` for positive definite ``g``.

    Returns ``(d, mu)``; raises ``ValueError`` if a pivot is not positive.
    """
    n = len(g)
    q = [[Fraction(x) for x in row] for row in g]
    d: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("not positive definite")
        d.append(q[i][i])
        for j in range(i + 1, n):
            mu[i][j] = q[i][j] / q[i][i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                q[j][k] -= mu[i][j] * q[i][k]
    return d, mu


def charpoly(a: Matrix) -> list[int]:
    """Characteristic polynomial ``det(tI - a)``, coefficients highest degree first.

    Faddeev-LeVerrier; every division is exact over Z.
    """
    n = len(a)
    coeffs = [1]
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += c
        am = matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        c = -tr // k
        coeffs.append(c)
    return coeffs


def is_unimodular_matrix(a: Matrix) -> bool:
    return abs(det(a)) == 1


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def inverse_unimodular(a: Matrix) -> Matrix:
    """Integer inverse of a matrix with determinant +-1 via the adjugate."""
    n = len(a)
    d = det(a)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    if n == 1:
        return [[d]]
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            inv[j][i] = (-1) ** (i + j) * det(minor) * d
    return inv
