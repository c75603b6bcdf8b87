"""3-divisible A2^n configurations: coefficients, admissible n, numeric ledger.

Covers the arithmetic of the inseparable triple cover: intersection and Euler
characteristic formulas, the eta/B degree budget, Jacobian-quotient
dimensions over F_3 and the K3/rational verdict rules.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

AMBIENT_RANK = 22

# frozen rule keys used in traces and reports
RULE_RANK = "rank-bound"
RULE_INTEGRALITY = "norm-integrality"
RULE_H1 = "h1-nonnegative"


class CoefficientPair(NamedTuple):
    a: int
    a_prime: int


def coefficient_congruences(a: int, a_prime: int) -> tuple[int, int]:
    """Residues mod 3 of (-2a + a', a - 2a'); both must vanish."""
    return (-2 * a + a_prime) % 3, (a - 2 * a_prime) % 3


def classify_coefficients() -> set[CoefficientPair]:
    out = set()
    for a, ap in itertools.product(range(3), repeat=2):
        if (a, ap) == (0, 0):
            continue
        if coefficient_congruences(a, ap) == (0, 0):
            out.add(CoefficientPair(a, ap))
    return out


@dataclass(frozen=True)
class RuleStep:
    key: str
    statement: str
    rejected: tuple[tuple[int, str], ...]


def m_square(n: int) -> Fraction:
    """Self-intersection of M with 3M = sum(C_i + 2C'_i)."""
    return Fraction(-2 * n, 3)


def admissible_n(candidates: Iterable[int] | None = None) -> tuple[set[int], list[RuleStep]]:
    """Values of n surviving the rank, integrality and h^1 rules, with a trace."""
    alive = list(candidates) if candidates is not None else list(range(1, AMBIENT_RANK + 1))
    trace = []

    rejected = []
    for n in alive:
        if 2 * n > AMBIENT_RANK:
            rejected.append((n, f"rank 2n = {2 * n} > {AMBIENT_RANK}"))
        elif 2 * n == AMBIENT_RANK:
            rejected.append((n, "A2^n would have full rank and be negative definite; NS is hyperbolic"))
    trace.append(RuleStep(RULE_RANK, "n <= 10", tuple(rejected)))
    alive = [n for n in alive if n not in {r[0] for r in rejected}]

    rejected = []
    for n in alive:
        ms = m_square(n)
        if ms.denominator != 1 or ms.numerator % 2:
            rejected.append((n, f"M.M = {ms} is not an even integer"))
    trace.append(RuleStep(RULE_INTEGRALITY, "3 | n", tuple(rejected)))
    alive = [n for n in alive if n not in {r[0] for r in rejected}]

    rejected = []
    for n in alive:
        h1 = Fraction(n, 3) - 2
        if h1 < 0:
            rejected.append((n, f"h1(M) = {n}/3 - 2 = {h1} < 0"))
    trace.append(RuleStep(RULE_H1, "n/3 - 2 >= 0", tuple(rejected)))
    alive = [n for n in alive if n not in {r[0] for r in rejected}]
    return set(alive), trace


# -- cohomology ledger -------------------------------------------------------

@dataclass(frozen=True)
class BlowupSelfInts:
    cbar: int = -3
    ebar: int = -1
    ctilde: int = -1
    etilde: int = -3


@dataclass(frozen=True)
class CohomologyLedger:
    n: int
    m_square: int
    h1_M: int
    l_square: int
    chi_L: dict[int, int]
    h1_L: dict[int, int]
    chi_OY: int
    h1_OY: int
    blowup_selfints: BlowupSelfInts = field(default_factory=BlowupSelfInts)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m_square": self.m_square,
            "h1_M": self.h1_M,
            "l_square": self.l_square,
            "chi_L": {str(k): v for k, v in sorted(self.chi_L.items())},
            "h1_L": {str(k): v for k, v in sorted(self.h1_L.items())},
            "chi_OY": self.chi_OY,
            "h1_OY": self.h1_OY,
            "blowup_selfints": vars(self.blowup_selfints),
        }


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator


def chi_power(n: int, ell: int) -> Fraction:
    """chi(L^ell) on the blow-up; |ell| in {1, 2}."""
    k = abs(ell)
    if ell < 0:
        return Fraction(-5 * k * k * n + 3 * k * n, 6) + 2
    return -(Fraction(5 * k * k * n + 3 * k * n, 6) - 2)


def cohomology_ledger(n: int) -> CohomologyLedger:
    if n <= 0 or n % 3:
        raise ValueError("n must be a positive multiple of 3")
    chi = {ell: _as_int(chi_power(n, ell)) for ell in (-2, -1, 1, 2)}
    h1 = {ell: -chi[ell] for ell in chi}  # h0 = h2 = 0 for these powers
    return CohomologyLedger(
        n=n,
        m_square=_as_int(m_square(n)),
        h1_M=_as_int(Fraction(n, 3) - 2),
        l_square=_as_int(Fraction(-5 * n, 3)),
        chi_L=chi,
        h1_L=h1,
        chi_OY=_as_int(Fraction(-8 * n, 3) + 6),
        h1_OY=_as_int(Fraction(8 * n, 3) - 4),
    )


# -- eta / singularity budget ------------------------------------------------

@dataclass(frozen=True)
class EtaData:
    b_square: int
    n: int
    degree: int

    @property
    def valid(self) -> bool:
        return self.degree >= 0


def eta_degree(b_square: int, n: int) -> EtaData:
    return EtaData(b_square, n, b_square + 24 - 3 * n)


SINGULARITY_DIMS = {"A2": 1, "E6": 3, "E8": 4, "Elliptic": 6}
RATIONAL_LISTS = (
    Counter({"A2": 6}),
    Counter({"E6": 1, "A2": 3}),
    Counter({"E6": 2}),
    Counter({"E8": 1, "A2": 2}),
)
ETA_BUDGET = 6


class Verdict(NamedTuple):
    verdict: str  # "K3", "Rational" or "Invalid"
    budget: int
    reason: str


def cover_verdict(b_is_zero: bool, singularities: Iterable[str]) -> Verdict:
    sing = Counter(singularities)
    unknown = set(sing) - set(SINGULARITY_DIMS)
    if unknown:
        raise ValueError(f"unknown singularity types {sorted(unknown)}")
    budget = sum(SINGULARITY_DIMS[s] * k for s, k in sing.items())
    if not b_is_zero:
        return Verdict("Rational", budget, "B != 0")
    if budget != ETA_BUDGET:
        return Verdict("Invalid", budget, f"total Jacobian dimension {budget} != {ETA_BUDGET}")
    if sing["Elliptic"]:
        return Verdict("Rational", budget, "B = 0 with an elliptic singularity")
    if any(+sing == lst for lst in RATIONAL_LISTS):
        return Verdict("K3", budget, "B = 0 with rational singularities")
    return Verdict("Invalid", budget, "configuration not in the admissible list")


def intersection_calculus(kind: str, *args: int) -> int:
    """Self-intersections under a point blow-up or an inseparable pullback.

    ``blowup(self_int, m)`` gives c - m^2; ``insep_pullback(d, r, c)`` gives
    d*c/r^2 from f^*(C) = r*C~.
    """
    if kind == "blowup":
        c, m = args
        return c - m * m
    if kind == "insep_pullback":
        d, r, c = args
        val = Fraction(d * c, r * r)
        if val.denominator != 1:
            raise ValueError(f"pullback self-intersection {val} is not an integer")
        return val.numerator
    raise ValueError(f"unknown kind {kind!r}")


# -- Jacobian quotient over F_3 ----------------------------------------------

Poly = dict[tuple[int, int], int]


class _Infinite:
    """Marker for an infinite-dimensional Jacobian quotient; compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self


INFINITE = _Infinite()
P = 3

_FACTOR = re.compile(r"(\d+)|([xy])(?:\^(\d+))?")


def parse_poly(text: str) -> Poly:
    """Parse sums of terms like ``2x^2y``, ``x^2 + y^4``, ``-x*y^3`` (mod 3)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    poly: Poly = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        coef, exps = 1, {"x": 0, "y": 0}
        pos = 0
        for piece in body.split("*"):
            if not piece:
                raise ValueError(f"cannot parse term {term!r}")
            pos = 0
            while pos < len(piece):
                m = _FACTOR.match(piece, pos)
                if not m:
                    raise ValueError(f"cannot parse term {term!r}")
                num, var, exp = m.groups()
                if num is not None:
                    coef *= int(num)
                else:
                    exps[var] += int(exp) if exp else 1
                pos = m.end()
        key = (exps["x"], exps["y"])
        poly[key] = (poly.get(key, 0) + sign * coef) % P
    return {k: v for k, v in poly.items() if v}


def _derivatives(f: Poly) -> tuple[Poly, Poly]:
    fx: Poly = {}
    fy: Poly = {}
    for (a, b), c in f.items():
        if a and (a * c) % P:
            fx[(a - 1, b)] = (fx.get((a - 1, b), 0) + a * c) % P
        if b and (b * c) % P:
            fy[(a, b - 1)] = (fy.get((a, b - 1), 0) + b * c) % P
    return {k: v for k, v in fx.items() if v}, {k: v for k, v in fy.items() if v}


def _rank_mod_p(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % P), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, P)
        rows[rank] = [(x * inv) % P for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % P:
                f = rows[i][c]
                rows[i] = [(x - f * y) % P for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def truncated_quotient_dim(f: Poly, degree: int) -> int:
    """dim_F3 of F3[x,y] / ((f_x, f_y) + m^degree)."""
    fx, fy = _derivatives(f)
    monos = [(a, d - a) for d in range(degree) for a in range(d + 1)]
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in (fx, fy):
        if not g:
            continue
        for (ma, mb) in monos:
            row = [0] * len(monos)
            for (a, b), c in g.items():
                key = (a + ma, b + mb)
                if key in index:
                    row[index[key]] = (row[index[key]] + c) % P
            rows.append(row)
    return len(monos) - (_rank_mod_p(rows) if rows else 0)


def local_jacobian_dimension(f: Poly | str, truncation: int = 12) -> int | _Infinite:
    """dim k[[x,y]]/(f_x, f_y) over F_3, or INFINITE when it does not stabilize.

    The value is finite exactly when the truncated dimensions at
    ``truncation - 1`` and ``truncation`` agree (Nakayama).
    """
    poly = parse_poly(f) if isinstance(f, str) else {k: v % P for k, v in f.items() if v % P}
    if not poly:
        raise ValueError("zero polynomial")
    if truncation < 2:
        raise ValueError("truncation must be at least 2")
    lower = truncated_quotient_dim(poly, truncation - 1)
    upper = truncated_quotient_dim(poly, truncation)
    return lower if lower == upper else INFINITE
