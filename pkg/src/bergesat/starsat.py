"""Saturation numbers of Berge stars: formula, constructions, verifier, brute force."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Mapping

from .bergedetect import (
    DEFAULT_PLACEMENT_BUDGET,
    BergeWitness,
    PatternGraph,
    find_berge,
    find_berge_in,
    find_berge_star,
    star_through,
)
from .confmodel import (
    greedy_linear_nearly_regular,
    poisson_means,
    sample_linear_nearly_regular,
)
from .errors import BudgetExceeded, InvalidParams, NoFeasibleA
from .hypercore import Edge, Hypergraph, non_edges

# above this lambda + mu, rejection sampling needs > e^12 trials per success
REJECTION_EXPONENT_LIMIT = 12


@dataclass(frozen=True)
class SatFormulaResult:
    n: int
    k: int
    ell: int
    value: int
    minimizers: frozenset[int]
    feasible_range: frozenset[int]
    chosen_a: int | None

    def objective(self, a: int) -> int:
        return star_objective(self.n, self.k, self.ell, a)


def star_objective(n: int, k: int, ell: int, a: int) -> int:
    """ceil((ell-1)(n-a)/k) + C(a, k), in exact integers."""
    return -(-(ell - 1) * (n - a) // k) + comb(a, k)


def sat_star_value(n: int, k: int, ell: int) -> SatFormulaResult:
    """Minimize the star objective over a in 1..n with C(a-1, k-1) <= ell-2."""
    if k < 3 or n < 1 or ell < 1:
        raise InvalidParams(f"need k >= 3, n >= 1, l >= 1; got n={n}, k={k}, l={ell}")
    if ell == 1:
        return SatFormulaResult(n, k, ell, 0, frozenset(), frozenset(), None)
    feasible = []
    for a in range(1, n + 1):
        if comb(a - 1, k - 1) > ell - 2:
            break  # C(a-1, k-1) is nondecreasing in a
        feasible.append(a)
    if not feasible:
        raise NoFeasibleA(f"no feasible a for n={n}, k={k}, l={ell}")
    values = {a: star_objective(n, k, ell, a) for a in feasible}
    best = min(values.values())
    minimizers = frozenset(a for a, v in values.items() if v == best)
    return SatFormulaResult(n, k, ell, best, minimizers, frozenset(feasible), max(minimizers))


def build_saturated_star(n: int, k: int, ell: int, seed: int = 0, max_trials: int | None = None,
                         method: str = "auto") -> Hypergraph:
    """Berge-K_{1,ell}-saturated hypergraph with the formula's edge count.

    The last ``chosen_a`` vertices form a complete k-uniform clique C; the
    rest carry a linear nearly-(ell-1)-regular hypergraph; if that leaves a
    set D of degree ell-2 vertices, one more edge joins D to the
    smallest-indexed vertices of C.

    ``method`` picks how the linear part is generated: "rejection" (the
    configuration-model sampler), "greedy", or "auto", which uses rejection
    unless its limiting success probability is below e^-12.
    """
    res = sat_star_value(n, k, ell)
    if ell == 1:
        return Hypergraph(n, k)
    c = res.chosen_a
    rest = n - c
    d = ell - 1
    clique = list(combinations(range(rest, n), k))
    if rest == 0:
        return Hypergraph(n, k, clique)
    if method == "auto":
        lam, mu = poisson_means(d, k)
        method = "rejection" if lam + mu <= REJECTION_EXPONENT_LIMIT else "greedy"
    if method == "rejection":
        part = sample_linear_nearly_regular(rest, d, k, seed, max_trials)
    elif method == "greedy":
        part = greedy_linear_nearly_regular(rest, d, k, seed, max_trials or 100_000)
    else:
        raise InvalidParams(f"unknown method {method!r}")
    edges = clique + list(part.edges)
    low = [v for v in range(rest) if part.degree(v) == d - 1]
    if low:
        if k - len(low) > c:
            raise InvalidParams(f"clique of size {c} too small for the patch edge")
        edges.append(tuple(low) + tuple(range(rest, rest + k - len(low))))
    return Hypergraph(n, k, edges)


def build_saturated_clique(n: int, k: int, ell: int) -> Hypergraph:
    """All k-sets meeting B in at most one vertex, where A is the last ell-2 vertices."""
    if k < 2 or ell < k + 2 or n < ell:
        raise InvalidParams(f"need l >= k+2 and n >= l; got n={n}, k={k}, l={ell}")
    b = n - (ell - 2)
    a_side = range(b, n)
    edges = list(combinations(a_side, k))
    for x in range(b):
        edges.extend((x,) + rest for rest in combinations(a_side, k - 1))
    return Hypergraph(n, k, edges)


def clique_construction_size(n: int, k: int, ell: int) -> int:
    return comb(ell - 2, k) + comb(ell - 2, k - 1) * (n - ell + 2)


@dataclass(frozen=True)
class SaturationVerdict:
    is_free: bool
    missing_edge: Edge | None
    witness_count: int
    certificates: Mapping[Edge, BergeWitness] | None = field(default=None, compare=False)

    @property
    def saturated(self) -> bool:
        return self.is_free and self.missing_edge is None


def _target_pattern(target) -> PatternGraph:
    return PatternGraph.star(target) if isinstance(target, int) else target


def is_berge_saturated(h: Hypergraph, target, certificates: bool = False,
                       budget: int = DEFAULT_PLACEMENT_BUDGET) -> SaturationVerdict:
    """Decide saturation for ``target``: a leaf count (star) or a PatternGraph.

    When h is free, every copy created by adding a non-edge must use that
    edge, so the sweep only searches copies through it. The sweep stops at
    the lexicographically first non-edge that creates no copy.
    """
    star = isinstance(target, int)
    pattern = _target_pattern(target)
    if star:
        free = find_berge_star(h, target) is None
    else:
        free = find_berge(h, pattern, budget) is None
    if not free:
        return SaturationVerdict(False, None, 0, {} if certificates else None)
    certs: dict[Edge, BergeWitness] = {}
    count = 0
    for e in non_edges(h):
        if star:
            w = star_through(h, e, target)
        else:
            w = find_berge_in(h.edges + (e,), h.n, pattern, budget, through=e)
        if w is None:
            return SaturationVerdict(True, e, count, certs if certificates else None)
        count += 1
        if certificates:
            certs[e] = w
    return SaturationVerdict(True, None, count, certs if certificates else None)


def low_degree_set(h: Hypergraph, ell: int) -> list[int]:
    """Vertices of degree below ell - 1."""
    return [v for v in range(h.n) if h.degree(v) < ell - 1]


def brute_force_min_saturated(n: int, k: int, ell: int, budget: int = 1_000_000) -> tuple[int, Hypergraph]:
    """Smallest Berge-K_{1,ell}-saturated hypergraph on n vertices by exhaustive search.

    Edge sets are tried in increasing size; ``budget`` bounds the number of
    candidate sets examined.
    """
    if k < 2 or n < 0 or ell < 1:
        # K_{1,0} is contained in everything, so nothing is K_{1,0}-saturated
        raise InvalidParams(f"need k >= 2, n >= 0, l >= 1; got n={n}, k={k}, l={ell}")
    universe = list(combinations(range(n), k))
    examined = 0
    for m in range(len(universe) + 1):
        for chosen in combinations(universe, m):
            examined += 1
            if examined > budget:
                raise BudgetExceeded(budget)
            h = Hypergraph(n, k, chosen)
            if any(h.degree(v) >= ell for v in range(n)) and find_berge_star(h, ell) is not None:
                continue
            if is_berge_saturated(h, ell).saturated:
                return m, h
    # the complete hypergraph is saturated whenever it is free; otherwise some
    # maximal free set is, so the loop above always returns
    raise AssertionError("unreachable")
