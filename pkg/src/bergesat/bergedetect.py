"""Berge-copy detection.

A hypergraph H contains a Berge copy of a graph G when the vertices of G can
be placed injectively on V(H) and every edge of G can be assigned its own
hyperedge containing both placed endpoints. Stars are decided by a single
bipartite matching per center; general small patterns by enumerating
placements and running the same matching on each.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import InvalidParams, ParseError, PatternTooLarge
from .hypercore import Edge, Hypergraph

DEFAULT_PLACEMENT_BUDGET = 2_000_000


def bipartite_max_matching(left_count: int, right_count: int,
                           adjacency: Sequence[Iterable[int]]) -> tuple[int, list[int | None]]:
    """Maximum bipartite matching by augmenting paths.

    Left vertices are processed in increasing order and each tries its
    neighbours in increasing order, so the pairing is deterministic.
    Returns the size and ``pair[i]``, the right vertex matched to left i or
    None.
    """
    adj = [sorted(set(a)) for a in adjacency]
    if len(adj) != left_count:
        raise InvalidParams("adjacency must have one list per left vertex")
    for nbrs in adj:
        if nbrs and not (0 <= nbrs[0] and nbrs[-1] < right_count):
            raise InvalidParams("adjacency refers to a missing right vertex")
    match_right: list[int | None] = [None] * right_count
    match_left: list[int | None] = [None] * left_count

    def augment(u: int, seen: list[bool]) -> bool:
        for w in adj[u]:
            if seen[w]:
                continue
            seen[w] = True
            if match_right[w] is None or augment(match_right[w], seen):
                match_right[w] = u
                match_left[u] = w
                return True
        return False

    size = 0
    for u in range(left_count):
        if adj[u] and augment(u, [False] * right_count):
            size += 1
    return size, match_left


@dataclass(frozen=True)
class PatternGraph:
    p: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.p < 1:
            raise InvalidParams("pattern needs at least one vertex")
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidParams(f"pattern loop at {u}")
            if not (0 <= u < self.p and 0 <= v < self.p):
                raise InvalidParams(f"pattern edge ({u}, {v}) outside 0..{self.p - 1}")
            e = (min(u, v), max(u, v))
            if e in edges:
                raise InvalidParams(f"pattern edge {e} repeated")
            edges.add(e)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @classmethod
    def star(cls, leaves: int) -> PatternGraph:
        """K_{1,leaves} with center 0."""
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))

    @classmethod
    def complete(cls, p: int) -> PatternGraph:
        return cls(p, tuple(combinations(range(p), 2)))

    @classmethod
    def path(cls, length: int) -> PatternGraph:
        return cls(length + 1, tuple((i, i + 1) for i in range(length)))

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def neighbours(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}


def parse_pattern(text: str) -> PatternGraph:
    """Pattern text: ``p m`` then m lines ``u v``; ``#`` lines are comments."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#") or not line.strip():
            continue
        try:
            rows.append((lineno, [int(t) for t in line.split()]))
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
    if not rows or len(rows[0][1]) != 2:
        raise ParseError(rows[0][0] if rows else 1, "header must be 'p m'")
    (p, m) = rows[0][1]
    body = rows[1:]
    if len(body) != m:
        raise ParseError(body[-1][0] if body else rows[0][0], f"expected {m} edges, found {len(body)}")
    edges = []
    for lineno, vals in body:
        if len(vals) != 2:
            raise ParseError(lineno, "edge line must be 'u v'")
        edges.append(tuple(vals))
    try:
        return PatternGraph(p, tuple(edges))
    except InvalidParams as exc:
        raise ParseError(rows[0][0], str(exc), exc) from exc


def serialize_pattern(g: PatternGraph) -> str:
    return "".join([f"{g.p} {len(g.edges)}\n"] + [f"{u} {v}\n" for u, v in g.edges])


@dataclass(frozen=True)
class BergeWitness:
    """Pattern vertex -> host vertex, and pattern edge -> hyperedge."""

    vertex_map: Mapping[int, int]
    edge_map: Mapping[tuple[int, int], Edge]

    @property
    def center(self) -> int | None:
        return self.vertex_map.get(0)


def validate_witness(edges: Iterable[Edge], pattern: PatternGraph, w: BergeWitness) -> bool:
    """Check ``w`` against the Berge definition on the hyperedge collection ``edges``."""
    present = {tuple(sorted(e)) for e in edges}
    vmap = dict(w.vertex_map)
    if set(vmap) != set(range(pattern.p)) and pattern.edges:
        return False
    if len(set(vmap.values())) != len(vmap):
        return False
    if set(w.edge_map) != set(pattern.edges):
        return False
    images = [tuple(sorted(e)) for e in w.edge_map.values()]
    if len(set(images)) != len(images):
        return False
    for (u, v), e in w.edge_map.items():
        e = tuple(sorted(e))
        if e not in present or vmap[u] not in e or vmap[v] not in e:
            return False
    return True


def _star_matching(center: int, edges: Sequence[Edge]) -> tuple[int, list[int | None], list[int]]:
    leaves = sorted({w for e in edges for w in e if w != center})
    col = {w: i for i, w in enumerate(leaves)}
    adj = [[col[w] for w in e if w != center] for e in edges]
    size, pair = bipartite_max_matching(len(edges), len(leaves), adj)
    return size, pair, leaves


def max_star_at(h: Hypergraph, v: int) -> int:
    """Largest l such that v centers a Berge-K_{1,l}."""
    if not 0 <= v < h.n:
        raise InvalidParams(f"vertex {v} outside 0..{h.n - 1}")
    return _star_matching(v, h.incidence[v])[0]


def _star_witness(center: int, edges: Sequence[Edge], leaves_wanted: int) -> BergeWitness | None:
    size, pair, leaves = _star_matching(center, edges)
    if size < leaves_wanted:
        return None
    vmap = {0: center}
    emap = {}
    i = 1
    for e, j in zip(edges, pair):
        if j is None or i > leaves_wanted:
            continue
        vmap[i] = leaves[j]
        emap[0, i] = e
        i += 1
    return BergeWitness(vmap, emap)


def _centers_by_degree(h: Hypergraph, ell: int) -> list[int]:
    cands = [v for v in range(h.n) if h.degree(v) >= ell]
    return sorted(cands, key=lambda v: (-h.degree(v), v))


def find_berge_star(h: Hypergraph, ell: int) -> BergeWitness | None:
    """A Berge-K_{1,ell} witness in h, or None."""
    if ell < 0:
        raise InvalidParams("leaf count must be >= 0")
    if ell == 0:
        return BergeWitness({0: 0} if h.n else {}, {})
    for v in _centers_by_degree(h, ell):
        w = _star_witness(v, h.incidence[v], ell)
        if w is not None:
            return w
    return None


def contains_berge_star(h: Hypergraph, ell: int) -> bool:
    return find_berge_star(h, ell) is not None


def star_through(h: Hypergraph, extra: Edge, ell: int) -> BergeWitness | None:
    """Berge-K_{1,ell} in h + extra using ``extra``, when h itself has none.

    Any new star must use the added edge, so only its vertices are tried as
    centers.
    """
    for v in extra:
        edges = h.incidence[v] + (extra,)
        if len(edges) >= ell:
            w = _star_witness(v, edges, ell)
            if w is not None:
                return w
    return None


def _twin_classes(g: PatternGraph) -> list[int]:
    """rep[v] = smallest vertex in v's (true or false) twin class."""
    nb = [g.neighbours(v) for v in range(g.p)]
    rep = list(range(g.p))
    for u in range(g.p):
        for v in range(u):
            if rep[v] != v:
                continue
            if nb[u] - {v} == nb[v] - {u}:
                rep[u] = v
                break
    return rep


class _Search:
    def __init__(self, edges: Sequence[Edge], n: int, pattern: PatternGraph, budget: int,
                 through: Edge | None):
        self.pattern = pattern
        self.n = n
        self.budget = budget
        self.through = set(through) if through is not None else None
        self.pair_index: dict[tuple[int, int], list[Edge]] = {}
        deg = [0] * n
        for e in edges:
            for v in e:
                deg[v] += 1
            for pair in combinations(e, 2):
                self.pair_index.setdefault(pair, []).append(e)
        self.host_degree = deg
        pdeg = [pattern.degree(v) for v in range(pattern.p)]
        self.pdeg = pdeg
        self.nbrs = [pattern.neighbours(v) for v in range(pattern.p)]
        self.order = self._placement_order()
        self.rep = _twin_classes(pattern)
        self.nodes = 0

    def _placement_order(self) -> list[int]:
        # connected, highest degree first, so neighbour constraints bite early
        g = self.pattern
        order: list[int] = []
        left = set(range(g.p))
        while left:
            nxt = max(left, key=lambda v: (sum(u in order for u in self.nbrs[v]), self.pdeg[v], -v))
            order.append(nxt)
            left.remove(nxt)
        return order

    def _codeg(self, x: int, y: int) -> list[Edge]:
        return self.pair_index.get((x, y) if x < y else (y, x), [])

    def run(self) -> BergeWitness | None:
        place: dict[int, int] = {}
        used: set[int] = set()
        return self._extend(0, place, used)

    def _extend(self, depth: int, place: dict[int, int], used: set[int]) -> BergeWitness | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise PatternTooLarge(f"placement search exceeded {self.budget} nodes")
        if depth == len(self.order):
            return self._assign(place)
        u = self.order[depth]
        floor = -1
        r = self.rep[u]
        for v in range(r, u):
            if self.rep[v] == r and v in place:
                floor = max(floor, place[v])
        for x in range(floor + 1, self.n):
            if x in used or self.host_degree[x] < self.pdeg[u]:
                continue
            if any(w in place and not self._codeg(x, place[w]) for w in self.nbrs[u]):
                continue
            # twins later in index order must land above x
            if any(self.rep[v] == r and v in place and v > u and place[v] < x for v in range(u + 1, self.pattern.p)):
                continue
            place[u] = x
            used.add(x)
            found = self._extend(depth + 1, place, used)
            del place[u]
            used.discard(x)
            if found is not None:
                return found
        return None

    def _assign(self, place: dict[int, int]) -> BergeWitness | None:
        pedges = self.pattern.edges
        if self.through is not None and not any(
                place[a] in self.through and place[b] in self.through for a, b in pedges):
            return None
        cand = [self._codeg(place[a], place[b]) for a, b in pedges]
        hedges = sorted({e for es in cand for e in es})
        col = {e: i for i, e in enumerate(hedges)}
        size, pair = bipartite_max_matching(len(pedges), len(hedges), [[col[e] for e in es] for es in cand])
        if size < len(pedges):
            return None
        return BergeWitness(dict(place), {pe: hedges[j] for pe, j in zip(pedges, pair)})


def find_berge_in(edges: Sequence[Edge], n: int, g: PatternGraph,
                  budget: int = DEFAULT_PLACEMENT_BUDGET, through: Edge | None = None) -> BergeWitness | None:
    """Search a raw edge list; ``through`` restricts to copies touching that edge in a pattern edge."""
    if g.p > n:
        return None
    return _Search(edges, n, g, budget, through).run()


def find_berge(h: Hypergraph, g: PatternGraph, budget: int = DEFAULT_PLACEMENT_BUDGET) -> BergeWitness | None:
    """A Berge-G witness in h, or None. Raises PatternTooLarge past ``budget`` search nodes."""
    return find_berge_in(h.edges, h.n, g, budget)


def contains_berge(h: Hypergraph, g: PatternGraph, budget: int = DEFAULT_PLACEMENT_BUDGET) -> bool:
    return find_berge(h, g, budget) is not None
