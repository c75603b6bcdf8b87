"""Exact lattice arithmetic for 3-divisible A2 configurations on K3 surfaces."""
from .lattice import (
    DegenerateLatticeError,
    Lattice,
    LatticeError,
    LatticeVector,
    direct_sum,
    determinant,
    invariants,
    make_standard,
    rescale,
    signature,
)
from .discriminant import discriminant_group, p_length, smith_normal_form
from .overlattice import GlueSpec, glue, is_divisible, orthogonal_complement, primitive_closure
from .roots import root_decomposition, short_vectors
from .constructors import glued_piece, parse_expression

__version__ = "0.1.0"

__all__ = [
    "DegenerateLatticeError",
    "GlueSpec",
    "Lattice",
    "LatticeError",
    "LatticeVector",
    "determinant",
    "direct_sum",
    "discriminant_group",
    "glue",
    "glued_piece",
    "invariants",
    "is_divisible",
    "make_standard",
    "orthogonal_complement",
    "p_length",
    "parse_expression",
    "primitive_closure",
    "rescale",
    "root_decomposition",
    "short_vectors",
    "signature",
    "smith_normal_form",
]
