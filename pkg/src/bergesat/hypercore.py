"""Uniform hypergraphs, pseudo-hypergraphs, degree sequences and the text format.

Vertices are the integers ``0..n-1``. Edges are stored as ascending tuples
and the edge tuple itself is kept in lexicographic order, so two equal
hypergraphs always compare and serialize identically.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    DuplicateVertexInEdge,
    EdgeOutOfRange,
    HypergraphError,
    InvalidParams,
    NotDivisible,
    ParseError,
    WrongArity,
)

Edge = tuple[int, ...]


def _canonical_edge(raw: Iterable[int], n: int, k: int) -> Edge:
    verts = list(raw)
    if len(verts) != k:
        raise WrongArity(f"edge {verts} has {len(verts)} vertices, expected {k}")
    for v in verts:
        if not 0 <= v < n:
            raise EdgeOutOfRange(f"vertex {v} of edge {verts} outside 0..{n - 1}")
    edge = tuple(sorted(verts))
    if any(a == b for a, b in zip(edge, edge[1:])):
        raise DuplicateVertexInEdge(f"edge {verts} repeats a vertex")
    return edge


@dataclass(frozen=True)
class Hypergraph:
    """A simple k-uniform hypergraph.

    Construction validates and canonicalizes ``edges``; any iterable of
    vertex collections is accepted.
    """

    n: int
    k: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParams(f"vertex count must be >= 0, got {self.n}")
        if self.k < 2:
            raise InvalidParams(f"uniformity must be >= 2, got {self.k}")
        edges = sorted(_canonical_edge(e, self.n, self.k) for e in self.edges)
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise DuplicateEdge(f"edge {a} appears twice")
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        """``incidence[v]`` lists the edges containing v, in edge order."""
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                inc[v].append(e)
        return tuple(tuple(es) for es in inc)

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], tuple[Edge, ...]]:
        """Map each co-occurring vertex pair ``(u, w)``, u < w, to its edges."""
        idx: dict[tuple[int, int], list[Edge]] = defaultdict(list)
        for e in self.edges:
            for pair in combinations(e, 2):
                idx[pair].append(e)
        return {p: tuple(es) for p, es in idx.items()}

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(es) for es in self.incidence)

    def with_edge(self, edge: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.n, self.k, self.edges + (tuple(edge),))

    def induced(self, vertices: Iterable[int]) -> tuple[Edge, ...]:
        """Edges lying entirely inside ``vertices``."""
        keep = set(vertices)
        return tuple(e for e in self.edges if keep.issuperset(e))

    def __str__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"


def new_hypergraph(n: int, k: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(n, k, tuple(edges))


@dataclass(frozen=True)
class PseudoHypergraph:
    """k-uniform multi-hypergraph: edges are sorted vertex multisets and may repeat."""

    n: int
    k: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = []
        for e in self.edges:
            e = tuple(sorted(e))
            if len(e) != self.k:
                raise WrongArity(f"pseudo-edge {e} has multiplicity {len(e)}, expected {self.k}")
            if e and not (0 <= e[0] and e[-1] < self.n):
                raise EdgeOutOfRange(f"pseudo-edge {e} leaves 0..{self.n - 1}")
            edges.append(e)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def degrees(self) -> tuple[int, ...]:
        """Degrees counted with multiplicity."""
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def has_repeated_vertex(self) -> bool:
        return any(a == b for e in self.edges for a, b in zip(e, e[1:]))

    def has_repeated_edge(self) -> bool:
        return any(a == b for a, b in zip(self.edges, self.edges[1:]))

    def is_simple(self) -> bool:
        return not self.has_repeated_vertex() and not self.has_repeated_edge()

    def to_hypergraph(self) -> Hypergraph:
        """Lossless conversion; raises HypergraphError unless simple."""
        return Hypergraph(self.n, self.k, self.edges)


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    k: int
    d: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        if self.k < 2:
            raise InvalidParams(f"uniformity must be >= 2, got {self.k}")
        if any(x < 0 for x in self.degrees):
            raise InvalidParams("degrees must be non-negative")
        if self.total % self.k:
            raise NotDivisible(f"degree sum {self.total} not divisible by k={self.k}")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def nearly_regular_degree(self) -> int | None:
        """The d for which this sequence is nearly-d-regular, if any.

        An explicit ``d`` given at construction wins; otherwise the maximum
        degree is used when every entry is d or d-1 with fewer than k at d-1.
        """
        if self.d is not None:
            return self.d
        if not self.degrees:
            return None
        top = max(self.degrees)
        low = sum(1 for x in self.degrees if x == top - 1)
        if all(x in (top, top - 1) for x in self.degrees) and low < self.k:
            return top
        return None


def degree_sequence_of(h: Hypergraph) -> DegreeSequence:
    return DegreeSequence(h.degrees, h.k)


def is_linear(h: Hypergraph) -> bool:
    """True iff no two edges share two or more vertices."""
    return all(len(es) == 1 for es in h.pair_index.values())


def non_edges(h: Hypergraph) -> Iterator[Edge]:
    """Yield the k-subsets of the vertex set that are not edges, lexicographically."""
    present = h.edge_set
    for e in combinations(range(h.n), h.k):
        if e not in present:
            yield e


def count_non_edges(h: Hypergraph) -> int:
    return comb(h.n, h.k) - h.m


def complete_hypergraph(n: int, k: int, vertices: Sequence[int] | None = None) -> Hypergraph:
    """All k-subsets of ``vertices`` (default ``range(n)``) as edges."""
    pool = range(n) if vertices is None else sorted(vertices)
    return Hypergraph(n, k, tuple(combinations(pool, k)))


# ---------------------------------------------------------------------------
# Text format


def _data_lines(text: str) -> Iterator[tuple[int, str]]:
    if text and not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing trailing newline")
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        if line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int) -> list[int]:
    toks = line.split()
    if not toks:
        raise ParseError(lineno, "empty line")
    try:
        vals = [int(t, 10) for t in toks]
    except ValueError:
        raise ParseError(lineno, f"non-integer token in {line!r}") from None
    if any(v < 0 for v in vals):
        raise ParseError(lineno, f"negative value in {line!r}")
    return vals


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the canonical ``n k m`` header plus m edge lines."""
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing header line") from None
    head = _ints(header, lineno)
    if len(head) != 3:
        raise ParseError(lineno, "header must be 'n k m'")
    n, k, m = head
    if k < 2:
        raise ParseError(lineno, f"uniformity must be >= 2, got {k}")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, line in lines:
        if len(edges) == m:
            raise ParseError(lineno, f"more than the declared {m} edges")
        verts = _ints(line, lineno)
        try:
            edge = _canonical_edge(verts, n, k)
        except HypergraphError as exc:
            raise ParseError(lineno, str(exc), exc) from exc
        if list(edge) != verts:
            raise ParseError(lineno, "edge vertices must be strictly increasing")
        if edge in seen:
            exc = DuplicateEdge(f"edge {edge} appears twice")
            raise ParseError(lineno, str(exc), exc)
        seen.add(edge)
        edges.append(edge)
    if len(edges) != m:
        raise ParseError(text.count("\n"), f"expected {m} edges, found {len(edges)}")
    return Hypergraph(n, k, tuple(edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    out = [f"{h.n} {h.k} {h.m}"]
    out.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(out) + "\n"


def read_hypergraph(path) -> Hypergraph:
    with open(path, encoding="ascii") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize_hypergraph(h))


def degree_histogram(h: Hypergraph) -> dict[int, int]:
    return dict(sorted(Counter(h.degrees).items()))
