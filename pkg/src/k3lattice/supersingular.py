"""Artin-invariant bounds and invariant checks for supersingular NS lattices in characteristic 3.

The checks certify the genus invariants of a candidate decomposition only;
uniqueness of the lattice with those invariants is assumed, not computed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .constructors import glued_piece, parse_expression
from .discriminant import discriminant_group, p_length
from .lattice import Lattice, LatticeError, determinant, direct_sum, make_standard, rescale, signature
from .overlattice import is_divisible

AMBIENT_RANK = 22
PRIME = 3


def artin_bound(l3: int, rank_l: int, ambient_rank: int = AMBIENT_RANK) -> int:
    """Largest sigma with 2 sigma <= l(A_L) + rank(L^perp)."""
    if l3 < 0:
        raise ValueError("l3 must be nonnegative")
    if rank_l > ambient_rank:
        raise ValueError("rank_L exceeds the ambient rank")
    return (l3 + ambient_rank - rank_l) // 2


@dataclass(frozen=True)
class SupersingularEntry:
    sigma: int
    expression: str
    key: str = ""
    note: str = ""

    def __post_init__(self):
        if not 1 <= self.sigma <= 10:
            raise ValueError("sigma must lie in [1, 10]")

    def lattice(self) -> Lattice:
        return parse_expression(self.expression)


@dataclass(frozen=True)
class LambdaCheck:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class LambdaReport:
    entry: SupersingularEntry
    checks: tuple[LambdaCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_lambda_entry(entry: SupersingularEntry) -> LambdaReport:
    """Rank 22, signature (1, 21), |det| = 3^(2 sigma), 3-elementary, 3-length 2 sigma."""
    lat = entry.lattice()
    pos, neg, zero = signature(lat)
    checks = [
        LambdaCheck("rank", AMBIENT_RANK, lat.rank),
        LambdaCheck("signature", (1, AMBIENT_RANK - 1), (pos, neg) if not zero else (pos, neg, zero)),
    ]
    det = determinant(lat)
    checks.append(LambdaCheck("abs-det", PRIME ** (2 * entry.sigma), abs(det)))
    if det == 0:
        checks.append(LambdaCheck("3-elementary", True, False))
        checks.append(LambdaCheck("3-length", 2 * entry.sigma, None))
    else:
        data = discriminant_group(lat)
        checks.append(LambdaCheck("3-elementary", True, all(d == PRIME for d in data.invariant_factors)))
        checks.append(LambdaCheck("3-length", 2 * entry.sigma, p_length(data, PRIME)))
    return LambdaReport(entry, tuple(checks))


def load_table() -> list[SupersingularEntry]:
    text = resources.files("k3lattice").joinpath("data/lambda_tables.json").read_text()
    return [
        SupersingularEntry(e["sigma"], e["expression"], e["key"], e.get("note", ""))
        for e in json.loads(text)["entries"]
    ]


def entries_for(sigma: int) -> list[SupersingularEntry]:
    return [e for e in load_table() if e.sigma == sigma]


def glue_length_drop(name: str) -> tuple[int, int]:
    """(l3 of the base, l3 of the glued piece) for a shipped glued piece."""
    from .constructors import GLUE_SPECS, GLUED_NAMES

    spec = GLUE_SPECS[GLUED_NAMES.get(name, name)]()
    base = p_length(discriminant_group(spec.base), PRIME)
    return base, p_length(discriminant_group(glued_piece(name).lattice), PRIME)


def indivisible_a2_check(blocks: tuple[int, ...] = tuple(range(9))) -> tuple[bool, object]:
    """Is sum over the chosen A2 blocks of (e + 2e') divisible by 3 in U(3) + 10A2?"""
    if len(set(blocks)) != len(blocks) or any(not 0 <= b < 10 for b in blocks):
        raise LatticeError("blocks must be distinct indices in [0, 10)")
    lat = direct_sum([rescale(make_standard("U"), 3)] + [make_standard("A2")] * 10)
    v = [0, 0] + [0] * 20
    for b in blocks:
        v[2 + 2 * b] = 1
        v[3 + 2 * b] = 2
    return is_divisible(lat, v, PRIME)
