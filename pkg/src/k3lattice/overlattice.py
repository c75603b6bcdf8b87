"""Overlattices from glue vectors, saturation, complements and divisibility."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import _linalg
from .discriminant import in_dual, integer_kernel, saturation
from .lattice import (
    DegenerateLatticeError,
    Lattice,
    LatticeError,
    LatticeVector,
    change_basis,
    determinant,
)


class GlueError(LatticeError):
    pass


@dataclass(frozen=True)
class GlueSpec:
    base: Lattice
    vectors: tuple[LatticeVector, ...]

    def __post_init__(self):
        vecs = tuple(
            v if isinstance(v, LatticeVector) else self.base.vector(v) for v in self.vectors
        )
        object.__setattr__(self, "vectors", vecs)

    def validate(self) -> None:
        """Raise GlueError unless the glue generates an even integral overlattice."""
        for k, v in enumerate(self.vectors):
            if not in_dual(self.base, v.coords):
                raise GlueError(f"glue vector {k} does not pair integrally with the base")
            nv = v.norm
            if nv.denominator != 1 or nv.numerator % 2:
                raise GlueError(f"glue vector {k} has norm {nv}, not an even integer")
            for w in self.vectors[k + 1:]:
                if v.dot(w).denominator != 1:
                    raise GlueError("glue vectors pair non-integrally with each other")


class GlueResult(NamedTuple):
    lattice: Lattice
    index: int
    basis: list[list[Fraction]]  # rows: new basis in base coordinates


def _rational_span_basis(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], int]:
    """HNF basis of the Z-span of rational rows, plus the common denominator used."""
    den = _linalg.common_denominator(x for row in rows for x in row)
    scaled = [[int(Fraction(x) * den) for x in row] for row in rows]
    h = _linalg.hnf_rows(scaled)
    return [[Fraction(x, den) for x in row] for row in h], den


def glue(spec: GlueSpec) -> GlueResult:
    """Overlattice generated by the base and the glue vectors."""
    spec.validate()
    base = spec.base
    n = base.rank
    if not spec.vectors:
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return GlueResult(base, 1, ident)
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    gens += [list(v.coords) for v in spec.vectors]
    basis, _ = _rational_span_basis(gens)
    gram = _linalg.matmul(_linalg.matmul(basis, base.gram), _linalg.transpose(basis))
    gram_int = tuple(tuple(int(x) for x in row) for row in gram)
    index = 1 / abs(_linalg.rational_det(basis))
    if index.denominator != 1:
        raise GlueError("glue result is not an overlattice")
    return GlueResult(Lattice(gram_int), int(index), basis)


def lift(result: GlueResult, base_coords: Sequence) -> list[Fraction]:
    """Coordinates in the glued basis of a vector given in base coordinates."""
    # x_base = c @ basis  =>  c = x_base @ basis^{-1}
    inv = _linalg.inverse(result.basis)
    return [sum(Fraction(x) * inv[i][j] for i, x in enumerate(base_coords)) for j in range(len(inv))]


# -- embeddings --------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingResult:
    sublattice: Lattice
    closure: Lattice
    index: int
    complement: Lattice
    closure_basis: list[list[int]]
    complement_basis: list[list[int]]


def _coords(vectors: Sequence, ambient: Lattice) -> list[list[int]]:
    rows = []
    for v in vectors:
        c = v.coords if isinstance(v, LatticeVector) else tuple(Fraction(x) for x in v)
        if len(c) != ambient.rank:
            raise LatticeError("vector length does not match ambient rank")
        if any(Fraction(x).denominator != 1 for x in c):
            raise LatticeError("sublattice vectors must be integral in the ambient")
        rows.append([int(x) for x in c])
    return rows


def orthogonal_complement_basis(ambient: Lattice, sub: Sequence) -> list[list[int]]:
    if determinant(ambient) == 0:
        raise DegenerateLatticeError("ambient lattice is degenerate")
    rows = _coords(sub, ambient)
    if not rows:
        return _linalg.identity(ambient.rank)
    pairing = _linalg.matmul(rows, ambient.gram)
    return _linalg.hnf_rows(integer_kernel(pairing))


def orthogonal_complement(ambient: Lattice, sub: Sequence) -> Lattice:
    """All ambient vectors orthogonal to every vector of ``sub``."""
    basis = orthogonal_complement_basis(ambient, sub)
    return change_basis(ambient, basis)


def primitive_closure(ambient: Lattice, sub: Sequence) -> EmbeddingResult:
    rows = _coords(sub, ambient)
    if not rows:
        raise LatticeError("empty sublattice")
    sat, index = saturation(rows)
    closure_basis = _linalg.hnf_rows(sat)
    comp_basis = orthogonal_complement_basis(ambient, closure_basis)
    return EmbeddingResult(
        sublattice=change_basis(ambient, rows),
        closure=change_basis(ambient, closure_basis),
        index=index,
        complement=change_basis(ambient, comp_basis),
        closure_basis=closure_basis,
        complement_basis=comp_basis,
    )


def is_divisible(ambient: Lattice, v, n: int) -> tuple[bool, LatticeVector | None]:
    """Whether v/n is an integral vector of the ambient lattice."""
    if n < 2:
        raise ValueError("n must be at least 2")
    vec = v if isinstance(v, LatticeVector) else ambient.vector(v)
    if not vec.is_integral:
        raise LatticeError("vector is not integral in the ambient lattice")
    w = vec / n
    return (True, w) if w.is_integral else (False, None)
