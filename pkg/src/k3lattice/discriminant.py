"""Smith normal form and discriminant groups A_L = L^v / L."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .lattice import DegenerateLatticeError, Lattice, LatticeError, LatticeVector, dual_gram


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ input @ right == diag`` with unimodular ``left`` and ``right``."""

    left: list[list[int]]
    diag: list[list[int]]
    right: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.diag), len(self.diag[0]) if self.diag else 0)
        return [self.diag[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith form by elementary row/column operations with tracked transforms.

    Pivots are taken of minimal absolute value; the output is deterministic.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = _linalg.identity(rows)
    right = _linalg.identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in right:
            row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, a[i][t] // p)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, a[t][j] // p)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, -1)  # row t += row bad, then retry
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    return SmithDecomposition(left, a, right)


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Saturated integer basis (as rows) of {x : m x = 0}."""
    if not m:
        return _linalg.identity(ncols or 0)
    snf = smith_normal_form(m)
    r = snf.rank
    cols = len(m[0])
    rt = _linalg.transpose(snf.right)
    return [rt[j] for j in range(r, cols)]


def saturation(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Basis of (Q-span of rows) ∩ Z^n and the index of the row span in it.

    Rows must be linearly independent.
    """
    snf = smith_normal_form(rows)
    r = snf.rank
    if r != len(rows):
        raise LatticeError("vectors are linearly dependent")
    inv_right = _linalg.inverse(snf.right)
    basis = [[int(x) for x in inv_right[i]] for i in range(r)]
    index = 1
    for d in snf.diagonal[:r]:
        index *= d
    return basis, index


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of a x = b, or None when none exists."""
    snf = smith_normal_form(a)
    lb = _linalg.matvec(snf.left, b)
    cols = len(a[0]) if a else 0
    diag = snf.diagonal
    y = [0] * cols
    for i, v in enumerate(lb):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if v != 0:
                return None
        else:
            if v % d:
                return None
            y[i] = v // d
    return _linalg.matvec(snf.right, y)


# -- discriminant groups -----------------------------------------------------

@dataclass(frozen=True)
class DiscriminantData:
    invariant_factors: tuple[int, ...]
    generators: tuple[LatticeVector, ...]
    qvalues: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def mod2(x: Fraction) -> Fraction:
    """Canonical representative of x modulo 2 in [0, 2)."""
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


def discriminant_group(lat: Lattice) -> DiscriminantData:
    try:
        ginv = dual_gram(lat)
    except DegenerateLatticeError:
        raise
    snf = smith_normal_form(lat.gram)
    left_inv = _linalg.inverse(snf.left)
    factors, gens, qs = [], [], []
    for i, d in enumerate(snf.diagonal):
        if d == 1:
            continue
        # dual-basis coefficients u = left^{-1} e_i, coordinates G^{-1} u
        u = [left_inv[j][i] for j in range(lat.rank)]
        coords = _linalg.matvec(ginv, u)
        v = lat.vector(coords)
        factors.append(d)
        gens.append(v)
        qs.append(mod2(v.norm))
    return DiscriminantData(tuple(factors), tuple(gens), tuple(qs))


def p_length(data: DiscriminantData | Sequence[int], p: int) -> int:
    """Number of invariant factors divisible by the prime p."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    factors = data.invariant_factors if isinstance(data, DiscriminantData) else data
    return sum(1 for d in factors if d % p == 0)


def in_dual(lat: Lattice, coords: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in _linalg.matvec(lat.gram, coords))


def disc_form_value(lat: Lattice, x: LatticeVector | Sequence) -> Fraction:
    """q(x) = x.x reduced into [0, 2) for x in the dual of an even lattice."""
    if not lat.is_even:
        raise LatticeError("discriminant quadratic form needs an even lattice")
    coords = x.coords if isinstance(x, LatticeVector) else tuple(Fraction(c) for c in x)
    if len(coords) != lat.rank:
        raise LatticeError("coordinate length does not match lattice rank")
    if not in_dual(lat, coords):
        raise LatticeError("vector is not in the dual lattice")
    return mod2(Fraction(lat.norm(coords)))
