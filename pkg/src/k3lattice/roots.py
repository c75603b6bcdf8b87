"""Short vectors of definite lattices and ADE types of root systems."""
from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import _linalg
from .lattice import Lattice, LatticeError, cartan_matrix, signature

MAX_RANK = 24

ROOT_COUNTS = {"A": lambda n: n * (n + 1), "D": lambda n: 2 * n * (n - 1)}
E_ROOT_COUNTS = {6: 72, 7: 126, 8: 240}


def root_count(letter: str, rank: int) -> int:
    if letter == "E":
        return E_ROOT_COUNTS[rank]
    return ROOT_COUNTS[letter](rank)


def _positive_gram(lat: Lattice, norm: int) -> tuple[list[list[int]], int]:
    if lat.rank > MAX_RANK:
        raise LatticeError(f"rank {lat.rank} exceeds the enumeration cap {MAX_RANK}")
    pos, neg, zero = signature(lat)
    if zero or (pos and neg):
        raise LatticeError("short-vector enumeration needs a definite lattice")
    if neg:
        if norm > 0:
            raise LatticeError("norm sign does not match a negative definite lattice")
        return [[-x for x in row] for row in lat.gram], -norm
    if norm < 0:
        raise LatticeError("norm sign does not match a positive definite lattice")
    return [list(row) for row in lat.gram], norm


def _fincke_pohst_form(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """q with Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2, exactly."""
    n = len(a)
    q = [[Fraction(x) for x in row] for row in a]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _integer_window(center: Fraction, radius_sq: Fraction) -> range:
    """All integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    s = isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    lo = (center - s).__floor__()
    hi = (center + s).__ceil__()
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def _enumerate(q, bound: Fraction, exact: Fraction, top_values=None) -> list[tuple[int, ...]]:
    n = len(q)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        window = _integer_window(center, remaining / q[i][i])
        if i == n - 1 and top_values is not None:
            window = [v for v in window if v in top_values]
        for v in window:
            x[i] = v
            rest = remaining - q[i][i] * (v - center) ** 2
            if i == 0:
                if bound - rest == exact:
                    out.append(tuple(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    if n:
        rec(n - 1, bound)
    return out


def _top_window(q, bound: Fraction) -> list[int]:
    n = len(q)
    return list(_integer_window(Fraction(0), bound / q[n - 1][n - 1]))


def _worker(args):
    q, bound, exact, values = args
    return _enumerate(q, bound, exact, set(values))


def short_vectors(lat: Lattice, norm: int, workers: int = 1) -> list[tuple[int, ...]]:
    """All v with v.v == norm in a definite lattice, sorted lexicographically."""
    a, target = _positive_gram(lat, norm)
    if lat.rank == 0:
        return [()] if target == 0 else []
    q = _fincke_pohst_form(a)
    bound = Fraction(target)
    if workers <= 1:
        found = _enumerate(q, bound, bound)
    else:
        tops = _top_window(q, bound)
        chunks = [tops[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_worker, [(q, bound, bound, c) for c in chunks if c])
            found = [v for part in parts for v in part]
    if target == 0:
        found = [v for v in found if any(v)]
    return sorted(found)


def box_search(lat: Lattice, norm: int) -> list[tuple[int, ...]]:
    """Naive oracle: scan the box |x_i| <= sqrt(norm * (G^-1)_ii)."""
    a, target = _positive_gram(lat, norm)
    inv = _linalg.inverse(a)
    bounds = []
    for i in range(len(a)):
        r = target * inv[i][i]
        bounds.append(isqrt(r.numerator // r.denominator))
    out = []
    for x in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if _linalg.bilinear(a, x, x) == target and (target or any(x)):
            out.append(tuple(x))
    return sorted(out)


# -- root systems ------------------------------------------------------------

@dataclass(frozen=True)
class RootSystemReport:
    norm: int
    count: int
    vectors: tuple[tuple[int, ...], ...]
    ade: tuple[tuple[str, int], ...]
    simple_roots: tuple[tuple[int, ...], ...] = ()

    @property
    def ade_string(self) -> str:
        if not self.ade:
            return "0"
        counts = Counter(self.ade)
        parts = []
        for (letter, rank), k in sorted(counts.items(), key=lambda t: (t[0][0], t[0][1])):
            parts.append(f"{k if k > 1 else ''}{letter}{rank}")
        return " + ".join(parts)


def _next_prime(n: int) -> int:
    def prime(p):
        return p > 1 and all(p % f for f in range(2, isqrt(p) + 1))

    while not prime(n):
        n += 1
    return n


def _classify_component(nodes: list[int], adj: dict[int, set[int]]) -> tuple[str, int]:
    k = len(nodes)
    edges = sum(len(adj[v]) for v in nodes) // 2
    if edges != k - 1:
        raise LatticeError("Dynkin graph component is not a tree")
    degrees = sorted((len(adj[v]) for v in nodes), reverse=True)
    if k == 1 or degrees[0] <= 2:
        return ("A", k)
    if degrees[0] != 3 or degrees[1] > 2:
        raise LatticeError("Dynkin graph component is not of ADE type")
    center = next(v for v in nodes if len(adj[v]) == 3)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while len(adj[cur]) == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", k)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", k)
    raise LatticeError(f"Dynkin graph with arms {arms} is not of ADE type")


def root_decomposition(lat: Lattice, workers: int = 1) -> RootSystemReport:
    """Norm -2 vectors of a negative definite lattice and their ADE type."""
    pos, neg, zero = signature(lat)
    if pos or zero:
        raise LatticeError("root decomposition needs a negative definite lattice")
    roots = short_vectors(lat, -2, workers=workers)
    if not roots:
        return RootSystemReport(-2, 0, (), ())
    prime = _next_prime(2 * max(abs(c) for r in roots for c in r) + 2)
    weights = [prime**i for i in range(lat.rank)]
    positive = [r for r in roots if sum(w * c for w, c in zip(weights, r)) > 0]
    pos_set = set(positive)
    simple = []
    for alpha in positive:
        decomposable = False
        for beta in positive:
            if beta == alpha:
                continue
            diff = tuple(x - y for x, y in zip(alpha, beta))
            if diff in pos_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(alpha)
    adj: dict[int, set[int]] = {i: set() for i in range(len(simple))}
    for i, j in itertools.combinations(range(len(simple)), 2):
        if lat.pair(simple[i], simple[j]) != 0:
            adj[i].add(j)
            adj[j].add(i)
    seen: set[int] = set()
    ade = []
    for start in range(len(simple)):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        letter, rank = _classify_component(comp, adj)
        sub = [[-lat.pair(simple[a], simple[b]) for b in sorted(comp)] for a in sorted(comp)]
        if _linalg.bareiss_det(sub) != _linalg.bareiss_det(cartan_matrix(letter, rank)):
            raise LatticeError("component Cartan matrix does not match its ADE type")
        ade.append((letter, rank))
    ade.sort()
    if sum(root_count(t, r) for t, r in ade) != len(roots):
        raise LatticeError("root count does not match the ADE decomposition")
    return RootSystemReport(-2, len(roots), tuple(roots), tuple(ade), tuple(simple))
