"""Lattice constructor expressions such as ``U(3) + 2E6 + 4A2`` and the glued pieces."""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .lattice import Lattice, LatticeError, cartan_matrix, direct_sum, make_standard, rescale
from .overlattice import GlueResult, GlueSpec, glue

GLUED_NAMES = {"L": "L6", "L6": "L6", "L9": "L9", "L'": "L'", "Lp": "L'"}


def a2_glue_spec(count: int) -> GlueSpec:
    """count*A2 glued by (1/3)(e + 2e') in every block."""
    base = direct_sum([make_standard("A2")] * count)
    v = [Fraction(k % 2 + 1, 3) for k in range(2 * count)]
    return GlueSpec(base, (base.vector(v),))


def e6_glue_spec() -> GlueSpec:
    """3E6 glued by the sum of one minuscule coweight per block.

    Each block contributes row 0 of the inverse Cartan matrix (a dual
    generator of order 3), so the glue vector has norm -4.
    """
    e6 = make_standard("E6")
    base = direct_sum([e6] * 3)
    row = _linalg.inverse(cartan_matrix("E", 6))[0]
    return GlueSpec(base, (base.vector(list(row) * 3),))


GLUE_SPECS = {
    "L6": lambda: a2_glue_spec(6),
    "L9": lambda: a2_glue_spec(9),
    "L'": e6_glue_spec,
}


@lru_cache(maxsize=None)
def glued_piece(name: str) -> GlueResult:
    key = GLUED_NAMES.get(name, name)
    if key not in GLUE_SPECS:
        raise LatticeError(f"unknown glued piece {name!r}")
    return glue(GLUE_SPECS[key]())


_TERM = re.compile(r"^(\d*)\s*([A-Za-z_]+\d*'?|L')\s*(?:\((-?\d+)\))?$")


def parse_term(term: str) -> Lattice:
    t = term.strip().replace("_", "")
    m = _TERM.match(t)
    if not m:
        raise LatticeError(f"cannot parse lattice term {term!r}")
    mult, sym, scale = m.groups()
    k = int(mult) if mult else 1
    if k < 1:
        raise LatticeError(f"multiplicity must be positive in {term!r}")
    if sym in GLUED_NAMES:
        piece = glued_piece(sym).lattice
    else:
        piece = make_standard(sym)
    if scale is not None:
        piece = rescale(piece, int(scale))
    return direct_sum([piece] * k) if k > 1 else piece


def parse_expression(text: str) -> Lattice:
    """Direct sum of ``+`` or ``⊕`` separated terms, e.g. ``U(3) + L + E8(3)``."""
    parts = [p for p in re.split(r"\s*(?:\+|⊕)\s*", text.strip())]
    if not parts or any(not p for p in parts):
        raise LatticeError(f"empty term in lattice expression {text!r}")
    lats = [parse_term(p) for p in parts]
    return lats[0] if len(lats) == 1 else direct_sum(lats)
