"""Exact solution of square rational systems by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import SingularSystemError


def _integer_rows(A: Sequence[Sequence], b: Sequence) -> list[list[int]]:
    rows = []
    for row, rhs in zip(A, b):
        entries = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = lcm(*(e.denominator for e in entries))
        rows.append([int(e * scale) for e in entries])
    return rows


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...]:
    """Solve ``A x = b`` exactly for square nonsingular ``A``.

    Rows are scaled to integers and reduced with Bareiss' one-step
    fraction-free elimination, so every intermediate entry is an integer
    minor of the augmented matrix.  Raises SingularSystemError otherwise.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve needs a square system")
    if n == 0:
        return ()
    M = _integer_rows(A, b)
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if M[r][k] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"matrix is singular at column {k}")
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i = M[i]
            row_k = M[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n])
        for j in range(i + 1, n):
            s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return tuple(x)


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Exact determinant, also by Bareiss elimination."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in A]
    scale = Fraction(1)
    M = []
    for row in rows:
        s = lcm(*(e.denominator for e in row))
        scale /= s
        M.append([int(e * s) for e in row])
    sign = 1
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if M[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (pk * M[i][j] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pk
    return sign * M[n - 1][n - 1] * scale
