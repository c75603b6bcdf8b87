"""Neron-Severi models of genus-one fibrations with IV, IV* and I3 fibres.

A model is an intersection table on named generators: fibre components
(``<fibre label>.<component>``), sections, multisections and the fibre class
``F``. The cusp curve ``xi`` of a quasi-elliptic fibration is either solved
for from its prescribed intersection numbers, or, when the model has no other
horizontal curve, included as a generator itself.

Divisibility is decided modulo numerical equivalence on the declared
generators, so it certifies divisibility relative to the model's span.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .discriminant import integer_kernel, solve_integer
from .divisibility import admissible_n
from .lattice import Lattice, LatticeError
from .overlattice import GlueSpec, glue

CUSP = "xi"
FIBRE = "F"
AMBIENT_RANK = 22

COMPONENTS = {
    "IV": ("E1", "E2", "E3"),
    # C_j1 is the tip (multiplicity 1), C_j2 joins it to the centre C
    "IV*": ("C11", "C12", "C21", "C22", "C31", "C32", "C"),
    "I3": ("T0", "T1", "T2"),
}
MULTIPLICITY = {
    "IV": {"E1": 1, "E2": 1, "E3": 1},
    "IV*": {"C11": 1, "C21": 1, "C31": 1, "C12": 2, "C22": 2, "C32": 2, "C": 3},
    "I3": {"T0": 1, "T1": 1, "T2": 1},
}
EDGES = {
    "IV": (("E1", "E2"), ("E1", "E3"), ("E2", "E3")),
    "IV*": (("C11", "C12"), ("C21", "C22"), ("C31", "C32"), ("C12", "C"), ("C22", "C"), ("C32", "C")),
    "I3": (("T0", "T1"), ("T1", "T2"), ("T0", "T2")),
}
DEFAULT_DROP = {"IV": "E1", "IV*": "C", "I3": "T0"}
# the cusp passes through the common point of a IV fibre and meets the centre of IV*
CUSP_MEETS = {"IV": {"E1": 1, "E2": 1, "E3": 1}, "IV*": {"C": 1}}

_TYPE_ALIASES = {"IV": "IV", "IV*": "IV*", "IVstar": "IV*", "IVS": "IV*", "I3": "I3"}


class FibrationError(LatticeError):
    pass


@dataclass(frozen=True)
class FibreSpec:
    kodaira_type: str
    label: str
    drop: str | None = None

    def __post_init__(self):
        kt = _TYPE_ALIASES.get(self.kodaira_type)
        if kt is None:
            raise FibrationError(f"unsupported fibre type {self.kodaira_type!r}")
        object.__setattr__(self, "kodaira_type", kt)
        drop = self.drop or DEFAULT_DROP[kt]
        if drop not in COMPONENTS[kt]:
            raise FibrationError(f"{drop!r} is not a component of a {kt} fibre")
        object.__setattr__(self, "drop", drop)

    @property
    def components(self) -> tuple[str, ...]:
        return COMPONENTS[self.kodaira_type]

    def name(self, comp: str) -> str:
        return f"{self.label}.{comp}"


@dataclass(frozen=True)
class Section:
    name: str
    meets: Mapping[str, str]  # fibre label -> component


@dataclass(frozen=True)
class Multisection:
    name: str
    degree: int
    self_int: int
    meets: Mapping[str, Mapping[str, int]]  # fibre label -> {component: intersection}


@dataclass(frozen=True)
class DivisorClass:
    combination: Mapping[str, Fraction]

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in self.combination.items() if Fraction(v) != 0}
        object.__setattr__(self, "combination", dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0]))))

    def coeff(self, name: str) -> Fraction:
        return self.combination.get(name, Fraction(0))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        out = dict(self.combination)
        for k, v in other.combination.items():
            out[k] = out.get(k, 0) + v
        return DivisorClass(out)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + other * -1

    def __mul__(self, k) -> "DivisorClass":
        return DivisorClass({n: v * k for n, v in self.combination.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.combination:
            return "0"
        parts = []
        for name, c in self.combination.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a}*"
            parts.append(f"{sign} {coef}{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _sort_key(name: str):
    # numeric-aware ordering so f10 sorts after f9
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


_DIV_TERM = re.compile(r"([+-])?\s*(?:(\d+)(?:/(\d+))?\s*\*?\s*)?([A-Za-z_][\w.']*)")


def parse_divisor(text: str) -> DivisorClass:
    """Parse ``2*f1.E1 + f1.E2 - F`` or ``1/3*f1.E1``."""
    s = text.strip()
    pos = 0
    combo: dict[str, Fraction] = {}
    while pos < len(s):
        m = _DIV_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse divisor near {s[pos:]!r}")
        sign, num, den, name = m.groups()
        if pos and sign is None:
            raise ValueError(f"missing operator before {name!r}")
        c = Fraction(int(num) if num else 1, int(den) if den else 1)
        if sign == "-":
            c = -c
        combo[name] = combo.get(name, 0) + c
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    if not combo:
        raise ValueError("empty divisor")
    return DivisorClass(combo)


@dataclass(frozen=True)
class FibrationModel:
    fibres: tuple[FibreSpec, ...]
    sections: tuple[Section, ...]
    multisections: tuple[Multisection, ...]
    cusp: bool
    generators: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...]
    relations: tuple[DivisorClass, ...]
    horizontal_pairs: Mapping[frozenset, int] = field(default_factory=dict)
    assumptions: tuple[str, ...] = ()

    @property
    def cusp_is_generator(self) -> bool:
        return CUSP in self.generators

    @property
    def horizontals(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sections) + tuple(m.name for m in self.multisections)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.gram, self.generators)

    @property
    def fclass(self) -> DivisorClass:
        return DivisorClass({FIBRE: 1})

    def fibre(self, label: str) -> FibreSpec:
        for f in self.fibres:
            if f.label == label:
                return f
        raise KeyError(label)

    def vector(self, d: DivisorClass, names: Sequence[str] | None = None) -> list[Fraction]:
        names = list(names or self.generators)
        idx = {n: i for i, n in enumerate(names)}
        v = [Fraction(0)] * len(names)
        for k, c in d.combination.items():
            if k not in idx:
                raise FibrationError(f"{k!r} is not a generator of the model")
            v[idx[k]] += c
        return v

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        names, gram = augmented_table(self)
        return Fraction(_linalg.bilinear(gram, self.vector(a, names), self.vector(b, names)))

    def basis_lattice(self) -> Lattice:
        idx = [self.generators.index(b) for b in self.basis]
        return Lattice(tuple(tuple(self.gram[i][j] for j in idx) for i in idx), self.basis)


def _component_pair(kt: str, a: str, b: str) -> int:
    if a == b:
        return -2
    return 1 if (a, b) in EDGES[kt] or (b, a) in EDGES[kt] else 0


def build_ns_model(
    fibres: Sequence[FibreSpec],
    sections: Sequence[Section] = (),
    multisections: Sequence[Multisection] = (),
    cusp: bool = False,
    horizontal_pairs: Mapping[tuple[str, str], int] | None = None,
) -> FibrationModel:
    """Assemble the intersection table and check the fibre-class relations."""
    labels = [f.label for f in fibres]
    if len(set(labels)) != len(labels):
        raise FibrationError("fibre labels must be distinct")
    horizontal = [s.name for s in sections] + [m.name for m in multisections]
    if len(set(horizontal)) != len(horizontal):
        raise FibrationError("horizontal curve names must be distinct")
    if {FIBRE, CUSP} & set(horizontal):
        raise FibrationError(f"names {FIBRE!r} and {CUSP!r} are reserved")
    if cusp and any(f.kodaira_type == "I3" for f in fibres):
        raise FibrationError("a cusp curve is incompatible with I3 fibres")

    for s in sections:
        missing = set(labels) - set(s.meets)
        if missing:
            raise FibrationError(f"section {s.name} has no incidence on fibres {sorted(missing)}")
        for lab, comp in s.meets.items():
            if lab not in labels:
                raise FibrationError(f"section {s.name} refers to unknown fibre {lab!r}")
            fib = fibres[labels.index(lab)]
            if comp not in fib.components:
                raise FibrationError(f"section {s.name}: {comp!r} is not a component of {lab}")
            if MULTIPLICITY[fib.kodaira_type][comp] != 1:
                raise FibrationError(
                    f"section {s.name} meets {lab}.{comp} of multiplicity "
                    f"{MULTIPLICITY[fib.kodaira_type][comp]}"
                )
    for m in multisections:
        for lab in labels:
            if lab not in m.meets:
                raise FibrationError(f"multisection {m.name} has no incidence on fibre {lab}")
        for lab, inc in m.meets.items():
            if lab not in labels:
                raise FibrationError(f"multisection {m.name} refers to unknown fibre {lab!r}")
            fib = fibres[labels.index(lab)]
            bad = set(inc) - set(fib.components)
            if bad:
                raise FibrationError(f"multisection {m.name}: unknown components {sorted(bad)} on {lab}")
            total = sum(MULTIPLICITY[fib.kodaira_type][c] * k for c, k in inc.items())
            if total != m.degree:
                raise FibrationError(
                    f"multisection {m.name} meets fibre {lab} with degree {total}, declared {m.degree}"
                )

    names: list[str] = [f.name(c) for f in fibres for c in f.components]
    names += horizontal + [FIBRE]
    cusp_gen = cusp and not horizontal
    if cusp_gen:
        names.append(CUSP)
    idx = {n: i for i, n in enumerate(names)}
    size = len(names)
    g = [[0] * size for _ in range(size)]

    for f in fibres:
        for a, b in itertools.product(f.components, repeat=2):
            g[idx[f.name(a)]][idx[f.name(b)]] = _component_pair(f.kodaira_type, a, b)
    for s in sections:
        i = idx[s.name]
        g[i][i] = -2
        g[i][idx[FIBRE]] = g[idx[FIBRE]][i] = 1
        for lab, comp in s.meets.items():
            j = idx[f"{lab}.{comp}"]
            g[i][j] = g[j][i] = 1
    for m in multisections:
        i = idx[m.name]
        g[i][i] = m.self_int
        g[i][idx[FIBRE]] = g[idx[FIBRE]][i] = m.degree
        for lab, inc in m.meets.items():
            for comp, k in inc.items():
                j = idx[f"{lab}.{comp}"]
                g[i][j] = g[j][i] = k

    pairs = {frozenset(k): v for k, v in (horizontal_pairs or {}).items()}
    assumptions = []
    for a, b in itertools.combinations(horizontal, 2):
        key = frozenset((a, b))
        if key not in pairs:
            assumptions.append(f"{a}.{b} = 0 assumed (not declared)")
        g[idx[a]][idx[b]] = g[idx[b]][idx[a]] = pairs.get(key, 0)

    if cusp_gen:
        i = idx[CUSP]
        g[i][i] = -2
        g[i][idx[FIBRE]] = g[idx[FIBRE]][i] = 3
        for f in fibres:
            for comp, k in CUSP_MEETS[f.kodaira_type].items():
                j = idx[f.name(comp)]
                g[i][j] = g[j][i] = k

    relations = []
    for f in fibres:
        combo: dict[str, Fraction] = {FIBRE: Fraction(1)}
        for c in f.components:
            combo[f.name(c)] = Fraction(-MULTIPLICITY[f.kodaira_type][c])
        relations.append(DivisorClass(combo))

    basis = [n for n in names if not any(n == f.name(f.drop) for f in fibres)]
    model = FibrationModel(
        fibres=tuple(fibres),
        sections=tuple(sections),
        multisections=tuple(multisections),
        cusp=cusp,
        generators=tuple(names),
        gram=tuple(map(tuple, g)),
        basis=tuple(basis),
        relations=tuple(relations),
        horizontal_pairs=pairs,
        assumptions=tuple(assumptions),
    )
    fvec = model.vector(model.fclass)
    if _linalg.bilinear(model.gram, fvec, fvec) != 0:
        raise FibrationError("F.F != 0")
    for rel in relations:
        v = model.vector(rel)
        if any(_linalg.matvec(model.gram, v)):
            raise FibrationError(f"fibre relation {rel} is not numerically trivial")
    return model


# -- cusp curve ---------------------------------------------------------------

def cusp_prescription(model: FibrationModel) -> dict[str, int]:
    """Intersection numbers of the cusp curve with components and F."""
    out = {FIBRE: 3}
    for f in model.fibres:
        meets = CUSP_MEETS.get(f.kodaira_type)
        if meets is None:
            raise FibrationError(f"no cusp incidence for {f.kodaira_type} fibres")
        for c in f.components:
            out[f.name(c)] = meets.get(c, 0)
    return out


def solve_cusp_class(model: FibrationModel, extra: Mapping[str, int] | None = None) -> DivisorClass:
    """Coefficients of xi in the model basis.

    All coefficients except F's come from the prescribed pairings with fibre
    components and F; the F coefficient comes from xi.xi = -2. ``extra`` may
    prescribe xi.h for horizontal curves h when one is not enough.
    """
    if not model.cusp:
        raise FibrationError("model has no cusp curve")
    if model.cusp_is_generator:
        return DivisorClass({CUSP: 1})
    prescribed = cusp_prescription(model)
    prescribed.update(extra or {})
    unknowns = [b for b in model.basis if b != FIBRE]
    idx = {n: i for i, n in enumerate(model.generators)}
    eq_names = [b for b in model.basis if b not in model.horizontals] + [
        h for h in model.horizontals if h in prescribed
    ]
    a = [[model.gram[idx[e]][idx[u]] for u in unknowns] for e in eq_names]
    rhs = [prescribed[e] for e in eq_names]
    try:
        sol = _linalg.solve_rational(a, rhs)
    except ValueError as exc:
        raise FibrationError(f"cusp class not determined: {exc}") from None
    partial = DivisorClass(dict(zip(unknowns, sol)))
    v = model.vector(partial)
    fvec = model.vector(model.fclass)
    vf = Fraction(_linalg.bilinear(model.gram, v, fvec))
    if vf == 0:
        raise FibrationError("xi.xi = -2 cannot fix the F coefficient (xi.F = 0)")
    vv = Fraction(_linalg.bilinear(model.gram, v, v))
    d = (-2 - vv) / (2 * vf)
    cls = partial + DivisorClass({FIBRE: d})
    _check_cusp(model, cls, prescribed)
    return cls


def _check_cusp(model: FibrationModel, cls: DivisorClass, prescribed: Mapping[str, int]) -> None:
    v = model.vector(cls)
    row = _linalg.matvec(model.gram, v)
    idx = {n: i for i, n in enumerate(model.generators)}
    for name, val in prescribed.items():
        if row[idx[name]] != val:
            raise FibrationError(f"back-substitution failed: xi.{name} = {row[idx[name]]}, expected {val}")
    if _linalg.bilinear(model.gram, v, v) != -2:
        raise FibrationError("back-substitution failed: xi.xi != -2")


def cusp_pairings(model: FibrationModel, cls: DivisorClass) -> dict[str, Fraction]:
    """Pairings of a solved cusp class with every generator, plus xi.xi."""
    v = model.vector(cls)
    row = _linalg.matvec(model.gram, v)
    out = {n: Fraction(x) for n, x in zip(model.generators, row)}
    out[CUSP] = Fraction(_linalg.bilinear(model.gram, v, v))
    return out


def augmented_table(model: FibrationModel) -> tuple[list[str], list[list[int]]]:
    """Generators and Gram, with xi appended when it is solvable but not a generator."""
    names = list(model.generators)
    gram = [list(r) for r in model.gram]
    if model.cusp and not model.cusp_is_generator:
        try:
            cls = solve_cusp_class(model)
        except FibrationError:
            return names, gram
        pairings = cusp_pairings(model, cls)
        if any(x.denominator != 1 for x in pairings.values()):
            raise FibrationError("cusp class pairs non-integrally with the generators")
        for row, n in zip(gram, names):
            row.append(int(pairings[n]))
        gram.append([int(pairings[n]) for n in names] + [int(pairings[CUSP])])
        names.append(CUSP)
    return names, gram


# -- divisibility -------------------------------------------------------------

@dataclass(frozen=True)
class DivisibilityResult:
    divisible: bool
    n: int
    witness: DivisorClass | None
    certificate: tuple[tuple[str, Fraction, Fraction], ...]  # (generator, <d,g>, n<x,g>)
    d_square: Fraction
    witness_square: Fraction | None

    @property
    def certificate_holds(self) -> bool:
        if not self.divisible:
            return False
        return all(a == b for _, a, b in self.certificate) and (
            self.d_square == self.n**2 * self.witness_square
        )


def numerically_equal(model: FibrationModel, a: DivisorClass, b: DivisorClass) -> bool:
    names, gram = augmented_table(model)
    diff = model.vector(a - b, names)
    return not any(_linalg.matvec(gram, diff))


def check_divisor_divisibility(
    model: FibrationModel, d: DivisorClass, n: int = 3, witness: DivisorClass | None = None
) -> DivisibilityResult:
    """Decide whether d = n*x for an integral x, modulo numerical equivalence.

    Solvability of d = n x + r with r in the integral radical of the Gram is
    decided by the Smith form. A supplied ``witness`` is used when it passes.
    """
    names, gram = augmented_table(model)
    dv = model.vector(d, names)
    if any(c.denominator != 1 for c in dv):
        raise FibrationError("divisor must have integral coefficients")
    dint = [int(c) for c in dv]
    size = len(names)
    radical = integer_kernel(gram, size)
    if len(radical) == size:
        raise FibrationError("pairing is identically zero on the generators")
    system = [[n * int(i == j) for j in range(size)] + [r[i] for r in radical] for i in range(size)]
    sol = solve_integer(system, dint)
    dsq = Fraction(_linalg.bilinear(gram, dint, dint))
    if sol is None:
        return DivisibilityResult(False, n, None, (), dsq, None)
    x = sol[:size]
    if witness is not None:
        wv = model.vector(witness, names)
        resid = [a - n * b for a, b in zip(dint, wv)]
        if all(c.denominator == 1 for c in wv) and not any(_linalg.matvec(gram, resid)):
            x = wv
    wclass = DivisorClass(dict(zip(names, x)))
    dg = _linalg.matvec(gram, dint)
    xg = _linalg.matvec(gram, x)
    cert = tuple((name, Fraction(a), Fraction(n * b)) for name, a, b in zip(names, dg, xg))
    return DivisibilityResult(True, n, wclass, cert, dsq, Fraction(_linalg.bilinear(gram, x, x)))


# -- standard configurations --------------------------------------------------

def iv_fibres(count: int, prefix: str = "f", drop: str | None = None) -> list[FibreSpec]:
    return [FibreSpec("IV", f"{prefix}{i}", drop) for i in range(1, count + 1)]


def with_section(ell: int) -> FibrationModel:
    """ell IV* fibres, 10 - 3 ell IV fibres and a section s meeting E1 and C11."""
    if ell not in (0, 1, 2, 3):
        raise FibrationError("ell must be 0, 1, 2 or 3")
    fibres = [FibreSpec("IV*", f"g{i}") for i in range(1, ell + 1)] + iv_fibres(10 - 3 * ell)
    meets = {f.label: ("C11" if f.kodaira_type == "IV*" else "E1") for f in fibres}
    return build_ns_model(fibres, [Section("s", meets)], cusp=True)


def trisection_model(support: int, self_int: int, name: str = "C") -> FibrationModel:
    """Ten IV fibres and a trisection with profile (1,0,2) on ``support`` fibres, (1,1,1) elsewhere."""
    fibres = iv_fibres(10, drop="E3")
    meets = {}
    for i, f in enumerate(fibres, start=1):
        meets[f.label] = {"E1": 1, "E2": 0, "E3": 2} if i <= support else {"E1": 1, "E2": 1, "E3": 1}
    return build_ns_model(fibres, multisections=[Multisection(name, 3, self_int, meets)], cusp=True)


def config_class(fibre_labels: Iterable[str], a: int, b: int, comps=("E1", "E2")) -> DivisorClass:
    combo: dict[str, Fraction] = {}
    for lab in fibre_labels:
        combo[f"{lab}.{comps[0]}"] = Fraction(a)
        combo[f"{lab}.{comps[1]}"] = Fraction(b)
    return DivisorClass(combo)


# -- two sections on ten IV fibres -------------------------------------------

@dataclass(frozen=True)
class GapResult:
    m: int
    n: int
    verdict: str  # "Possible" or "Impossible"
    section_product: Fraction  # s.s' forced by the two cusp expressions
    configurations: tuple[tuple[DivisorClass, DivisibilityResult], ...] = ()


def _two_section_model(m: int, t: int) -> FibrationModel:
    fibres = iv_fibres(10)
    s = Section("s", {f.label: "E1" for f in fibres})
    sp = Section("s'", {f.label: ("E1" if i <= m else "E2") for i, f in enumerate(fibres, start=1)})
    return build_ns_model(fibres, [s, sp], cusp=False, horizontal_pairs={("s", "s'"): t})


def forced_section_product(m: int) -> Fraction:
    """s.s' for which xi expressed through s and through s' agree numerically."""
    fibres = iv_fibres(10)
    s = Section("s", {f.label: "E1" for f in fibres})
    sp = Section("s'", {f.label: ("E1" if i <= m else "E2") for i, f in enumerate(fibres, start=1)})
    xi_s = solve_cusp_class(build_ns_model(fibres, [s], cusp=True))
    xi_sp = solve_cusp_class(build_ns_model(fibres, [sp], cusp=True))
    diff = xi_s - xi_sp
    # diff.s' is affine in t = s.s'; it must vanish
    vals = []
    for t in (0, 1):
        model = _two_section_model(m, t)
        vals.append(model.pair(diff, DivisorClass({"s'": 1})))
    slope = vals[1] - vals[0]
    return -vals[0] / slope


def section_gap_analysis(m: int) -> GapResult:
    """Two sections agreeing on exactly m of ten IV fibres."""
    if m == 10:
        raise FibrationError("two distinct sections cannot meet the same component of every fibre")
    if not 0 <= m <= 10:
        raise FibrationError("m must lie in [0, 10]")
    n = 10 - m
    allowed, _ = admissible_n()
    t = forced_section_product(m)
    if n not in allowed:
        return GapResult(m, n, "Impossible", t)
    if t.denominator != 1:
        raise FibrationError(f"inconsistent: forced s.s' = {t} is not an integer")
    model = _two_section_model(m, int(t))
    labels = [f"f{i}" for i in range(m + 1, 11)]
    configs = []
    diff = DivisorClass({"s'": 1, "s": -1})
    tail = DivisorClass({f"{lab}.E2": 1 for lab in labels})
    for (a, b), k in (((1, 2), 1), ((2, 1), 2)):
        cls = config_class(labels, a, b)
        res = check_divisor_divisibility(model, cls, witness=k * diff + tail)
        if not res.divisible:
            raise FibrationError(f"configuration {cls} unexpectedly not divisible")
        configs.append((cls, res))
    return GapResult(m, n, "Possible", t, tuple(configs))


# -- trisections without a section --------------------------------------------

@dataclass(frozen=True)
class TrisectionResult:
    n: int
    cls: DivisorClass
    profile: dict[str, tuple[Fraction, Fraction, Fraction]]
    self_int: Fraction
    fibre_degree: Fraction
    h_degree: Fraction
    glue_index: int

    @property
    def arithmetic_genus(self) -> Fraction:
        return self.self_int / 2 + 1


def no_section_model() -> FibrationModel:
    """Ten IV fibres with basis E1, E2 per fibre, the cusp curve and F."""
    return build_ns_model(iv_fibres(10, drop="E3"), cusp=True)


def trisection_class(n: int, model: FibrationModel | None = None) -> TrisectionResult:
    """Class of the trisection attached to a divisible A2^n configuration, n in {6, 9}."""
    model = model or no_section_model()
    allowed, _ = admissible_n()
    if n not in allowed:
        raise FibrationError(f"configuration with n = {n} is not divisible (n must be in {sorted(allowed)})")
    labels = [f"f{i}" for i in range(1, n + 1)]
    third = config_class(labels, 1, 2) * Fraction(1, 3)
    base = model.basis_lattice()
    coords = model.vector(third, list(model.basis))
    try:
        glued = glue(GlueSpec(base, (base.vector(coords),)))
    except LatticeError as exc:
        raise FibrationError(f"configuration not divisible: {exc}") from None
    xi = DivisorClass({CUSP: 1})
    fcls = model.fclass
    if n == 9:
        cls = xi + third - 2 * fcls
    else:
        cls = third + xi - fcls
    profile = {}
    for f in model.fibres:
        profile[f.label] = tuple(model.pair(cls, DivisorClass({f.name(c): 1})) for c in f.components)
    h = xi + fcls
    return TrisectionResult(
        n=n,
        cls=cls,
        profile=profile,
        self_int=model.pair(cls, cls),
        fibre_degree=model.pair(cls, fcls),
        h_degree=model.pair(h, cls),
        glue_index=glued.index,
    )


@dataclass(frozen=True)
class ResidueReport:
    coefficients: dict[str, tuple[Fraction, Fraction]]
    fibre_coefficient: Fraction
    support: int
    thirds: bool
    pair_sums_integral: bool
    fibre_residue_ok: bool
    configuration: DivisorClass
    admissible: bool


def trisection_residues(
    profile: Mapping[str, tuple[int, int, int]], self_int: int, model: FibrationModel | None = None
) -> ResidueReport:
    """Write a trisection as xi + sum(a_i E1 + b_i E2) + N F and test its residues.

    The coefficients must lie in (1/3)Z with a_i + b_i integral; the support l
    (fibres with non-integral a_i) must satisfy N - l/3 in Z, and the resulting
    3-divisible A2^l configuration must have l in the admissible set.
    """
    model = model or no_section_model()
    coeffs = {}
    combo: dict[str, Fraction] = {CUSP: Fraction(1)}
    for f in model.fibres:
        x1, x2, x3 = profile[f.label]
        if x1 + x2 + x3 != 3:
            raise FibrationError(f"profile on {f.label} does not sum to the degree 3")
        # C.E1 = 1 - 2a + b, C.E2 = 1 + a - 2b
        a, b = _linalg.solve_rational([[-2, 1], [1, -2]], [x1 - 1, x2 - 1])
        coeffs[f.label] = (a, b)
        combo[f.name("E1")] = a
        combo[f.name("E2")] = b
    partial = DivisorClass(combo)
    vv = model.pair(partial, partial)
    vf = model.pair(partial, model.fclass)
    big_n = (self_int - vv) / (2 * vf)
    thirds = all((3 * a).denominator == 1 and (3 * b).denominator == 1 for a, b in coeffs.values())
    sums = all((a + b).denominator == 1 for a, b in coeffs.values())
    support = sum(1 for a, _ in coeffs.values() if a.denominator != 1)
    residue_ok = (big_n - Fraction(support, 3)).denominator == 1
    config: dict[str, Fraction] = {}
    for lab, (a, b) in coeffs.items():
        fa, fb = a - (a.numerator // a.denominator), b - (b.numerator // b.denominator)
        if fa:
            config[f"{lab}.E1"] = 3 * fa
            config[f"{lab}.E2"] = 3 * fb
    allowed, _ = admissible_n()
    return ResidueReport(
        coefficients=coeffs,
        fibre_coefficient=big_n,
        support=support,
        thirds=thirds,
        pair_sums_integral=sums,
        fibre_residue_ok=residue_ok,
        configuration=DivisorClass(config),
        admissible=support in allowed,
    )


# -- hyperplane class ---------------------------------------------------------

@dataclass(frozen=True)
class HyperplaneDegrees:
    h_square: Fraction
    degrees: dict[str, Fraction]


def hyperplane_degrees(model: FibrationModel) -> HyperplaneDegrees:
    """H = xi + F: H.H and H.g for every generator g (including xi)."""
    if not model.cusp:
        raise FibrationError("model has no cusp curve")
    names, gram = augmented_table(model)
    if CUSP not in names:
        raise FibrationError("cusp class could not be determined")
    h = model.vector(DivisorClass({CUSP: 1, FIBRE: 1}), names)
    row = _linalg.matvec(gram, h)
    return HyperplaneDegrees(
        Fraction(_linalg.bilinear(gram, h, h)), {n: Fraction(x) for n, x in zip(names, row)}
    )


# -- file format ---------------------------------------------------------------

def model_from_dict(data: Mapping) -> FibrationModel:
    fibres = [FibreSpec(f["type"], f["label"], f.get("drop")) for f in data.get("fibres", [])]
    sections = [Section(s["name"], dict(s["meets"])) for s in data.get("sections", [])]
    multis = [
        Multisection(m["name"], int(m["degree"]), int(m["self"]), {k: dict(v) for k, v in m["meets"].items()})
        for m in data.get("multisections", [])
    ]
    pairs = {}
    for p in data.get("pairs", []):
        pairs[(p["a"], p["b"])] = int(p["value"])
    return build_ns_model(fibres, sections, multis, bool(data.get("cusp", False)), pairs)
