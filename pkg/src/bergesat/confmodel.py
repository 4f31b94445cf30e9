"""Configuration model for k-uniform hypergraphs.

Vertex ``i`` with degree ``d_i`` owns the configuration points
``offset_i .. offset_i + d_i - 1`` where ``offset_i = d_0 + ... + d_{i-1}``.
A configuration is a partition of all points into blocks of size k; collapsing
each block onto the owners of its points gives a pseudo-hypergraph with the
prescribed degrees.

Randomness is organized in trials. Trial ``t`` under master seed ``s`` uses
its own stream derived from ``(s, t)`` only, so results never depend on how
trials are scheduled.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, factorial

import numpy as np

from . import _kernels
from .errors import InvalidParams, NotDivisible, TrialsExhausted
from .hypercore import DegreeSequence, Hypergraph, PseudoHypergraph

MAX_TRIALS_CAP = 10**7
_CHUNK = 1 << 18


@dataclass(frozen=True)
class Configuration:
    degrees: DegreeSequence
    matching: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = self.degrees.k
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.matching))
        total = self.degrees.total
        seen = sorted(p for b in blocks for p in b)
        if any(len(b) != k for b in blocks):
            raise InvalidParams(f"every block must have exactly {k} points")
        if seen != list(range(total)):
            raise InvalidParams("blocks must partition the configuration points exactly once")
        object.__setattr__(self, "matching", blocks)

    @classmethod
    def from_permutation(cls, degrees: DegreeSequence, perm) -> Configuration:
        """Chunk consecutive runs of k points of ``perm`` into blocks."""
        k = degrees.k
        perm = [int(p) for p in perm]
        return cls(degrees, tuple(tuple(perm[i:i + k]) for i in range(0, len(perm), k)))

    @property
    def k(self) -> int:
        return self.degrees.k

    @cached_property
    def groups(self) -> tuple[tuple[int, ...], ...]:
        out, start = [], 0
        for d in self.degrees:
            out.append(tuple(range(start, start + d)))
            start += d
        return tuple(out)

    @cached_property
    def owner(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) for _ in range(d))


@dataclass(frozen=True)
class DefectReport:
    loops: int
    overlaps: int
    lambda_: Fraction | None = None
    mu: Fraction | None = None

    @property
    def defect_free(self) -> bool:
        return self.loops == 0 and self.overlaps == 0


@dataclass(frozen=True)
class SamplerStats:
    trials_run: int
    mean_loops: Fraction
    mean_overlaps: Fraction
    frac_defect_free: Fraction
    lambda_: Fraction
    mu: Fraction
    predicted_success: float

    def to_json(self) -> dict:
        return {
            "trials_run": self.trials_run,
            "mean_loops": float(self.mean_loops),
            "mean_overlaps": float(self.mean_overlaps),
            "frac_defect_free": float(self.frac_defect_free),
            "lambda": str(self.lambda_),
            "mu": str(self.mu),
            "predicted_success": self.predicted_success,
        }


def poisson_means(d: int, k: int) -> tuple[Fraction, Fraction]:
    """Limiting means of the loop and overlap counts for nearly-d-regular sequences."""
    lam = Fraction((max(d, 1) - 1) * (k - 1), 2)
    return lam, lam * lam


def default_max_trials(d: int, k: int) -> int:
    lam, mu = poisson_means(d, k)
    exponent = float(lam + mu)
    if exponent > math.log(MAX_TRIALS_CAP / 100):
        return MAX_TRIALS_CAP
    return min(math.ceil(100 * math.exp(exponent)), MAX_TRIALS_CAP)


def nearly_regular_degree_sequence(n: int, d: int, k: int) -> DegreeSequence:
    """n - r vertices of degree d followed by r of degree d - 1, r = dn mod k."""
    if n < 1 or d < 0 or k < 2:
        raise InvalidParams(f"need n >= 1, d >= 0, k >= 2; got n={n}, d={d}, k={k}")
    r = (d * n) % k
    if n <= r:
        raise InvalidParams(f"n={n} must exceed r={r} = dn mod k")
    return DegreeSequence((d,) * (n - r) + (d - 1,) * r, k, d=d)


def num_configurations(x: int, k: int) -> int:
    """Exact number of perfect k-matchings on x labeled points."""
    if k < 2 or x < 0:
        raise InvalidParams(f"need k >= 2 and x >= 0; got x={x}, k={k}")
    if x % k:
        raise NotDivisible(f"{x} points cannot be split into blocks of {k}")
    blocks = x // k
    return factorial(x) // (factorial(k) ** blocks * factorial(blocks))


def sample_configuration(ds: DegreeSequence, rng: np.random.Generator) -> Configuration:
    """Uniform configuration: shuffle all points and chunk them into blocks."""
    return Configuration.from_permutation(ds, rng.permutation(ds.total))


def _owner_array(ds: DegreeSequence) -> np.ndarray:
    return np.repeat(np.arange(ds.n, dtype=np.int64), np.asarray(ds.degrees, dtype=np.int64))


def trial_configuration(ds: DegreeSequence, seed: int, t: int) -> Configuration:
    """The configuration drawn by trial ``t`` of master seed ``seed``."""
    perm = _kernels.trial_permutation(ds.total, np.uint64(seed), t)
    return Configuration.from_permutation(ds, perm)


def collapse(c: Configuration) -> PseudoHypergraph:
    owner = c.owner
    return PseudoHypergraph(c.degrees.n, c.k, tuple(tuple(owner[p] for p in b) for b in c.matching))


def count_defects(c: Configuration, d: int | None = None) -> DefectReport:
    """Count loops and overlaps of ``c``.

    Loops sum C(m, 2) over the multiplicity m of each vertex in each block.
    Overlaps sum, over unordered block pairs and unordered vertex pairs
    {u, w}, the product of the four multiplicities of u and w in both
    blocks. The Poisson means are attached when ``d`` is given or the
    degree sequence is nearly regular.
    """
    owner = c.owner
    loops = 0
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for block in c.matching:
        mult = Counter(owner[p] for p in block)
        loops += sum(comb(m, 2) for m in mult.values())
        for u, w in combinations(sorted(mult), 2):
            by_pair[u, w].append(mult[u] * mult[w])
    overlaps = 0
    for weights in by_pair.values():
        s = sum(weights)
        overlaps += (s * s - sum(x * x for x in weights)) // 2
    if d is None:
        d = c.degrees.nearly_regular_degree()
    lam = mu = None
    if d is not None:
        lam, mu = poisson_means(d, c.k)
    return DefectReport(loops, overlaps, lam, mu)


def _first_success(ds: DegreeSequence, seed: int, max_trials: int) -> int:
    owner = _owner_array(ds)
    maxdeg = max(ds.degrees, default=0)
    useed = np.uint64(seed)
    for start in range(0, max_trials, _CHUNK):
        stop = min(start + _CHUNK, max_trials)
        t = _kernels.first_defect_free(owner, ds.n, ds.k, maxdeg, useed, start, stop)
        if t >= 0:
            return int(t)
    raise TrialsExhausted(max_trials)


def sample_linear_nearly_regular(n: int, d: int, k: int, seed: int = 0,
                                 max_trials: int | None = None) -> Hypergraph:
    """Rejection-sample a linear nearly-d-regular k-uniform hypergraph.

    Trials are run in index order until one configuration has neither loops
    nor overlaps; its collapse is returned. Raises TrialsExhausted when
    ``max_trials`` (default from the limiting success probability) runs out.
    """
    ds = nearly_regular_degree_sequence(n, d, k)
    if d == 0:
        return Hypergraph(n, k)
    if max_trials is None:
        max_trials = default_max_trials(d, k)
    if max_trials < 1:
        raise InvalidParams("max_trials must be >= 1")
    t = _first_success(ds, seed, max_trials)
    conf = trial_configuration(ds, seed, t)
    report = count_defects(conf, d)
    # the compiled early-exit test and the reference counter must agree
    assert report.defect_free, f"trial {t} accepted with {report}"
    return collapse(conf).to_hypergraph()


def _greedy_attempt(ds: DegreeSequence, rng: np.random.Generator) -> list[tuple[int, ...]] | None:
    k = ds.k
    rem = list(ds.degrees)
    nbrs: list[set[int]] = [set() for _ in rem]
    edges = []
    left = sum(rem)
    while left:
        top = max(rem)
        firsts = [v for v, x in enumerate(rem) if x == top]
        block = [firsts[int(rng.integers(len(firsts)))]]
        for _ in range(1, k):
            cand = [v for v, x in enumerate(rem)
                    if x and v not in block and not any(v in nbrs[u] for u in block)]
            if not cand:
                return None
            weights = np.array([rem[v] for v in cand], dtype=float)
            block.append(cand[int(rng.choice(len(cand), p=weights / weights.sum()))])
        for u in block:
            rem[u] -= 1
            nbrs[u].update(block)
        left -= k
        edges.append(tuple(block))
    return edges


def greedy_linear_nearly_regular(n: int, d: int, k: int, seed: int = 0,
                                 max_attempts: int = 100_000) -> Hypergraph:
    """Build a linear nearly-d-regular hypergraph by randomized greedy pairing.

    Same degree layout as ``sample_linear_nearly_regular`` but not uniform:
    blocks are filled one point at a time from vertices compatible with the
    block so far, and the whole attempt restarts when no compatible vertex
    remains. Used where rejection succeeds too rarely to be practical.
    """
    ds = nearly_regular_degree_sequence(n, d, k)
    if d == 0:
        return Hypergraph(n, k)
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        edges = _greedy_attempt(ds, rng)
        if edges is not None:
            return Hypergraph(n, k, edges)
    raise TrialsExhausted(max_attempts)


def _defect_sums(owner, n, k, seed, start, stop):
    loops, overlaps = _kernels.defect_counts(owner, n, k, np.uint64(seed), start, stop)
    clean = int(np.count_nonzero((loops == 0) & (overlaps == 0)))
    return int(loops.sum()), int(overlaps.sum()), clean


def poisson_experiment(n: int, d: int, k: int, trials: int, seed: int = 0,
                       workers: int = 1) -> SamplerStats:
    """Empirical loop/overlap statistics over ``trials`` independent configurations."""
    if trials < 1:
        raise InvalidParams("trials must be >= 1")
    ds = nearly_regular_degree_sequence(n, d, k)
    lam, mu = poisson_means(d, k)
    owner = _owner_array(ds)
    bounds = [(s, min(s + _CHUNK // 16, trials)) for s in range(0, trials, _CHUNK // 16)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_defect_sums, *zip(*[(owner, n, k, seed, a, b) for a, b in bounds])))
    else:
        parts = [_defect_sums(owner, n, k, seed, a, b) for a, b in bounds]
    loops = sum(p[0] for p in parts)
    overlaps = sum(p[1] for p in parts)
    clean = sum(p[2] for p in parts)
    return SamplerStats(
        trials_run=trials,
        mean_loops=Fraction(loops, trials),
        mean_overlaps=Fraction(overlaps, trials),
        frac_defect_free=Fraction(clean, trials),
        lambda_=lam,
        mu=mu,
        predicted_success=math.exp(-float(lam + mu)),
    )
