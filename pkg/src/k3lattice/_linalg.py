"""Exact integer and rational matrix helpers.

Matrices are plain lists of rows. Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(gram: Sequence[Sequence], x: Sequence, y: Sequence):
    """Return x^T G y."""
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
    return total


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rational_det(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix with rational entries."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in m:
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    scaled = [[int(Fraction(x) * den) for x in row] for row in m]
    return Fraction(bareiss_det(scaled), den**n)


def rank_rational(m: Sequence[Sequence]) -> int:
    return len(row_echelon(m)[1])


def row_echelon(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse over Q. Raises ZeroDivisionError when singular."""
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of a x = b over Q.

    Raises ValueError when the system is inconsistent or underdetermined.
    """
    if not a:
        raise ValueError("empty system")
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = row_echelon(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < ncols:
        raise ValueError("singular linear system (solution not unique)")
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def common_denominator(values) -> int:
    den = 1
    for v in values:
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    return den


def hnf_rows(m: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the row lattice of an integer matrix.

    Zero rows are dropped. Pivots are positive and entries above each pivot
    are reduced into [0, pivot).
    """
    a = [list(row) for row in m if any(row)]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if not any(a[i][c] for i in range(r, len(a))):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [row for row in a if any(row)]
