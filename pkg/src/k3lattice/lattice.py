"""Integral quadratic lattices given by Gram matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import _linalg


class LatticeError(ValueError):
    """Invalid lattice data or an operation outside its domain."""


class DegenerateLatticeError(LatticeError):
    pass


class InvariantsRecord(NamedTuple):
    rank: int
    determinant: int
    signature: tuple[int, int, int]  # (positive, negative, zero)


@dataclass(frozen=True)
class Lattice:
    """A lattice Z^rank with the bilinear form given by ``gram``.

    Labels default to ``e1..eN``. Root lattices are negative definite.
    """

    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i}, {j})")
        labels = tuple(self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise LatticeError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise LatticeError("labels must be pairwise distinct")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, x: Sequence, y: Sequence):
        return _linalg.bilinear(self.gram, x, y)

    def norm(self, x: Sequence):
        return _linalg.bilinear(self.gram, x, x)

    def vector(self, coords: Iterable) -> "LatticeVector":
        return LatticeVector(tuple(coords), self)

    def unit(self, i: int) -> "LatticeVector":
        return self.vector(int(i == j) for j in range(self.rank))

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, gram={[list(r) for r in self.gram]})"


@dataclass(frozen=True)
class LatticeVector:
    """Rational coordinates in the generator basis of ``home``."""

    coords: tuple[Fraction, ...]
    home: Lattice

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.home.rank:
            raise LatticeError(
                f"vector has {len(coords)} coordinates, lattice rank is {self.home.rank}"
            )
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "LatticeVector"):
        if other.home != self.home:
            raise LatticeError("vectors live in different lattices")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.home)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.home)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords), self.home)

    def __mul__(self, k) -> "LatticeVector":
        return LatticeVector(tuple(a * k for a in self.coords), self.home)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "LatticeVector":
        return LatticeVector(tuple(a / Fraction(k) for a in self.coords), self.home)

    def dot(self, other: "LatticeVector") -> Fraction:
        self._check(other)
        return Fraction(self.home.pair(self.coords, other.coords))

    @property
    def norm(self) -> Fraction:
        return Fraction(self.home.norm(self.coords))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def pairings(self) -> list[Fraction]:
        """Pairings with every generator of the home lattice."""
        return [Fraction(x) for x in _linalg.matvec(self.home.gram, self.coords)]


# -- standard lattices -------------------------------------------------------

def _cartan_edges(letter: str, n: int) -> list[tuple[int, int]]:
    if letter == "A":
        if n < 1:
            raise LatticeError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(n - 1)]
    if letter == "D":
        if n < 4:
            raise LatticeError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if letter == "E":
        if n not in (6, 7, 8):
            raise LatticeError("E_n needs n in {6, 7, 8}")
        # Bourbaki numbering 1-3-4-5-6-7-8 with node 2 on node 4
        path = [0, 2, 3] + list(range(4, n))
        return [(path[i], path[i + 1]) for i in range(len(path) - 1)] + [(1, 3)]
    raise LatticeError(f"unsupported root system {letter}{n}")


def cartan_matrix(letter: str, n: int) -> list[list[int]]:
    m = [[2 * (i == j) for j in range(n)] for i in range(n)]
    for i, j in _cartan_edges(letter, n):
        m[i][j] = m[j][i] = -1
    return m


def make_standard(symbol: str, scale: int = 1) -> Lattice:
    """Root lattice (negative definite) or hyperbolic plane, scaled by ``scale``.

    ``symbol`` is ``"U"`` or a letter with rank, e.g. ``"A2"``, ``"D4"``, ``"E8"``
    (an underscore as in ``"E_8"`` is accepted).
    """
    if scale == 0:
        raise LatticeError("scale must be nonzero")
    sym = symbol.replace("_", "").strip()
    if sym == "U":
        return Lattice(((0, scale), (scale, 0)))
    letter, digits = sym[:1], sym[1:]
    if letter not in "ADE" or not digits.isdigit():
        raise LatticeError(f"unsupported symbol {symbol!r}")
    cm = cartan_matrix(letter, int(digits))
    return Lattice(tuple(tuple(-scale * x for x in row) for row in cm))


def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    n = sum(p.rank for p in parts)
    gram = [[0] * n for _ in range(n)]
    labels: list[str] = []
    offset = 0
    for k, part in enumerate(parts):
        for i in range(part.rank):
            for j in range(part.rank):
                gram[offset + i][offset + j] = part.gram[i][j]
        labels.extend(f"{k}:{lab}" for lab in part.labels)
        offset += part.rank
    return Lattice(tuple(map(tuple, gram)), tuple(labels))


def rescale(lat: Lattice, n: int) -> Lattice:
    if n == 0:
        raise LatticeError("scale must be nonzero")
    return Lattice(tuple(tuple(n * x for x in row) for row in lat.gram), lat.labels)


def change_basis(lat: Lattice, t: Sequence[Sequence[int]]) -> Lattice:
    """Gram matrix T G T^T for the basis given by the rows of T."""
    g = _linalg.matmul(_linalg.matmul(t, lat.gram), _linalg.transpose(t))
    return Lattice(tuple(map(tuple, g)))


def determinant(lat: Lattice) -> int:
    return _linalg.bareiss_det(lat.gram)


def signature(lat: Lattice) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in lat.gram]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # e_i -> e_i + e_j gives diagonal 2 a_ij != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            if a[i][p] != 0:
                f = a[i][p] / d
                for k in active:
                    a[i][k] -= f * a[p][k]
                a[i][p] = Fraction(0)
        for k in active:
            a[p][k] = Fraction(0)
    return pos, neg, n - pos - neg


def invariants(lat: Lattice) -> InvariantsRecord:
    return InvariantsRecord(lat.rank, determinant(lat), signature(lat))


def dual_gram(lat: Lattice) -> list[list[Fraction]]:
    """Inverse Gram matrix; row i holds the coordinates of the i-th dual basis vector."""
    try:
        return _linalg.inverse(lat.gram)
    except ZeroDivisionError:
        raise DegenerateLatticeError("lattice is degenerate") from None


def is_definite(lat: Lattice) -> bool:
    pos, neg, zero = signature(lat)
    return zero == 0 and (pos == 0 or neg == 0)
