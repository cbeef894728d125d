"""Exact integer and rational linear algebra (desk scale).

Determinants use Bareiss fraction-free elimination over Python ints, so
results are exact for any matrix of integers or Fractions.  Matrix products
take an int64 fast path when an a-priori bound rules out overflow and fall
back to arbitrary-precision objects otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

_INT64_SAFE = 2**62


def int_determinant(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by the Bareiss identity
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def fraction_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a matrix of Fractions (or ints)."""
    scaled = []
    denom = 1
    for row in rows:
        frs = [Fraction(x) for x in row]
        m = lcm(*(f.denominator for f in frs)) if frs else 1
        scaled.append([int(f * m) for f in frs])
        denom *= m
    return Fraction(int_determinant(scaled), denom)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two integer matrices.

    Uses int64 when max|a|*max|b|*inner_dim stays below 2**62 (no overflow
    possible), otherwise multiplies with Python ints.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    amax = int(np.abs(a).max(initial=0))
    bmax = int(np.abs(b).max(initial=0))
    inner = a.shape[1]
    if amax * bmax * inner < _INT64_SAFE:
        return a.astype(np.int64) @ b.astype(np.int64)
    return np.dot(a.astype(object), b.astype(object))


def solve_fraction_system(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a small square linear system exactly by Gaussian elimination.

    Raises ValueError if the matrix is singular.
    """
    n = len(b)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("singular system")
        m[col], m[pivot_row] = m[pivot_row], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]
