"""Small exact linear algebra helpers: determinants and linear solves
over Rat entries."""

from __future__ import annotations

from .exact import Rat

ZERO = Rat(0)
ONE = Rat(1)


def det(matrix) -> Rat:
    """Exact determinant via fraction-free (Bareiss) elimination.

    The fraction-free pivoting keeps intermediate entries as single
    products instead of letting numerators/denominators blow up through
    repeated rational division.
    """
    a = [[Rat(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(matrix, rhs):
    """Solve a square exact linear system by Gaussian elimination.

    Returns the solution vector, or None when the matrix is singular.
    """
    n = len(matrix)
    a = [[Rat(x) for x in row] + [Rat(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            f = a[i][k] / inv
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    x = [ZERO] * n
    for k in range(n - 1, -1, -1):
        s = a[k][n] - sum((a[k][j] * x[j] for j in range(k + 1, n)), ZERO)
        x[k] = s / a[k][k]
    return x
