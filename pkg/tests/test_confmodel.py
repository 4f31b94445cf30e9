from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chi2

from bergesat import _kernels, confmodel
from bergesat.confmodel import (
    Configuration,
    collapse,
    count_defects,
    default_max_trials,
    greedy_linear_nearly_regular,
    nearly_regular_degree_sequence,
    num_configurations,
    poisson_experiment,
    sample_configuration,
    sample_linear_nearly_regular,
    trial_configuration,
)
from bergesat.errors import InvalidParams, NotDivisible, TrialsExhausted
from bergesat.hypercore import DegreeSequence, degree_sequence_of, is_linear
from oracles import k_partitions, linear_by_pairs


@pytest.mark.parametrize("n, d, k, expected", [
    (10, 3, 4, (3,) * 8 + (2,) * 2),
    (6, 2, 3, (2,) * 6),
    (10, 1, 3, (1,) * 9 + (0,)),
    (5, 0, 3, (0,) * 5),
])
def test_nearly_regular_degree_sequence(n, d, k, expected):
    ds = nearly_regular_degree_sequence(n, d, k)
    assert ds.degrees == expected
    assert ds.total % k == 0


@pytest.mark.parametrize("n, d, k", [(0, 1, 3), (2, 1, 3), (5, -1, 3), (5, 1, 1)])
def test_nearly_regular_degree_sequence_rejects(n, d, k):
    with pytest.raises(InvalidParams):
        nearly_regular_degree_sequence(n, d, k)


@pytest.mark.parametrize("x, k", [(0, 2), (3, 3), (6, 3), (9, 3), (4, 2), (6, 2), (8, 2), (8, 4), (10, 2), (12, 3)])
def test_num_configurations_matches_enumeration(x, k):
    assert num_configurations(x, k) == sum(1 for _ in k_partitions(range(x), k))


def test_num_configurations_examples():
    assert num_configurations(3, 3) == 1
    assert num_configurations(6, 3) == 10
    assert num_configurations(4, 2) == 3
    with pytest.raises(NotDivisible):
        num_configurations(5, 3)


def test_num_configurations_is_exact_for_large_x():
    # 300 points into triples: far beyond float range, must stay an integer
    value = num_configurations(300, 3)
    assert isinstance(value, int)
    assert value * (6 ** 100) * __import__("math").factorial(100) == __import__("math").factorial(300)


def test_unique_configuration():
    ds = DegreeSequence((1, 1, 1), 3)
    for seed in range(20):
        c = sample_configuration(ds, np.random.default_rng(seed))
        assert c.matching == ((0, 1, 2),)


def _frequencies(sampler, degrees, samples):
    ds = DegreeSequence(degrees, 3)
    outcomes = list(k_partitions(range(ds.total), 3))
    counts = Counter(sampler(ds, s).matching for s in range(samples))
    assert set(counts) <= set(outcomes)
    return [counts[o] for o in outcomes]


@pytest.mark.parametrize("sampler", [
    lambda ds, s: sample_configuration(ds, np.random.default_rng(s)),
    lambda ds, s: trial_configuration(ds, 12345, s),
], ids=["generator", "trial-stream"])
@pytest.mark.parametrize("degrees", [(1,) * 6, (3, 3)])
def test_sampling_is_uniform(sampler, degrees):
    freq = _frequencies(sampler, degrees, 10_000)
    assert len(freq) == 10
    assert all(850 <= f <= 1150 for f in freq)
    stat = sum((f - 1000) ** 2 / 1000 for f in freq)
    assert stat < chi2.ppf(0.999, 9)


def test_collapse_examples():
    c = Configuration(DegreeSequence((3,), 3), ((0, 1, 2),))
    assert collapse(c).edges == ((0, 0, 0),)
    # points: V0 = {0, 1}, V1 = {2}, V2 = {3}, V3 = {4}, V4 = {5}
    c = Configuration(DegreeSequence((2, 1, 1, 1, 1), 3), ((0, 2, 3), (1, 4, 5)))
    assert collapse(c).edges == ((0, 1, 2), (0, 3, 4))


def test_configuration_rejects_bad_partition():
    ds = DegreeSequence((1,) * 6, 3)
    with pytest.raises(InvalidParams):
        Configuration(ds, ((0, 1, 2), (2, 3, 4)))
    with pytest.raises(InvalidParams):
        Configuration(ds, ((0, 1), (2, 3), (4, 5)))


def test_count_defects_examples():
    four = Configuration(DegreeSequence((4,), 4), ((0, 1, 2, 3),))
    assert count_defects(four).loops == 6
    # e = {v01, v11, v21}, f = {v02, v12, v31}
    c = Configuration(DegreeSequence((2, 2, 1, 1), 3), ((0, 2, 4), (1, 3, 5)))
    rep = count_defects(c)
    assert (rep.loops, rep.overlaps) == (0, 1)
    c = Configuration(DegreeSequence((2, 1), 3), ((0, 1, 2),))
    assert count_defects(c).loops == 1


def test_count_defects_poisson_means():
    ds = nearly_regular_degree_sequence(12, 2, 4)
    rep = count_defects(trial_configuration(ds, 0, 0))
    assert rep.lambda_ == Fraction(3, 2) and rep.mu == Fraction(9, 4)
    assert count_defects(trial_configuration(ds, 0, 0), d=1).lambda_ == 0


def _point_quadruple_overlaps(c):
    """Overlaps straight from the point-level definition."""
    owner = c.owner
    block_of = {p: i for i, b in enumerate(c.matching) for p in b}
    total = 0
    for quad in combinations(range(len(owner)), 4):
        by_vertex = Counter(owner[p] for p in quad)
        if sorted(by_vertex.values()) != [2, 2]:
            continue
        u, w = sorted(by_vertex)
        a, b = [p for p in quad if owner[p] == u]
        x, y = [p for p in quad if owner[p] == w]
        for p, q in ((x, y), (y, x)):
            if block_of[a] == block_of[p] and block_of[b] == block_of[q] and block_of[a] != block_of[b]:
                total += 1
    return total


def _point_pair_loops(c):
    owner = c.owner
    block_of = {p: i for i, b in enumerate(c.matching) for p in b}
    return sum(1 for p, q in combinations(range(len(owner)), 2)
               if owner[p] == owner[q] and block_of[p] == block_of[q])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5), st.sampled_from([2, 3, 4]), st.integers(0, 10**6))
def test_defect_counts_match_point_definitions(degrees, k, seed):
    total = sum(degrees)
    degrees = list(degrees)
    degrees[0] += (-total) % k
    ds = DegreeSequence(degrees, k)
    c = sample_configuration(ds, np.random.default_rng(seed))
    rep = count_defects(c)
    assert rep.loops == _point_pair_loops(c)
    assert rep.overlaps == _point_quadruple_overlaps(c)
    owners = np.array([[c.owner[p] for p in b] for b in c.matching], dtype=np.int64).reshape(-1, k)
    assert _kernels.block_defects(owners, ds.n) == (rep.loops, rep.overlaps)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 40), st.integers(1, 4), st.sampled_from([2, 3, 4]), st.integers(0, 2**64 - 1))
def test_collapse_preserves_degrees_and_defect_free_means_linear(n, d, k, seed):
    try:
        ds = nearly_regular_degree_sequence(n, d, k)
    except InvalidParams:
        return
    c = trial_configuration(ds, seed, 0)
    p = collapse(c)
    assert p.degrees == ds.degrees
    rep = count_defects(c)
    simple_linear = p.is_simple() and linear_by_pairs(p.edges)
    assert rep.defect_free == simple_linear


def test_lazy_kernel_agrees_with_reference_counter():
    ds = nearly_regular_degree_sequence(30, 2, 3)
    owner = confmodel._owner_array(ds)
    expected = [t for t in range(400) if count_defects(trial_configuration(ds, 99, t)).defect_free]
    found, start = [], 0
    while True:
        t = _kernels.first_defect_free(owner, ds.n, 3, 2, np.uint64(99), start, 400)
        if t < 0:
            break
        found.append(int(t))
        start = t + 1
    assert found == expected
    assert len(expected) > 10


def test_batch_counter_agrees_with_reference_counter():
    ds = nearly_regular_degree_sequence(25, 3, 3)
    owner = confmodel._owner_array(ds)
    loops, overlaps = _kernels.defect_counts(owner, ds.n, 3, np.uint64(5), 10, 60)
    for t in range(10, 60):
        rep = count_defects(trial_configuration(ds, 5, t))
        assert (loops[t - 10], overlaps[t - 10]) == (rep.loops, rep.overlaps)


def _check_nearly_regular(h, n, d, k):
    r = (d * n) % k
    degs = degree_sequence_of(h).degrees
    assert is_linear(h)
    assert h.m == d * n // k
    assert set(degs) <= {d, d - 1}
    assert sum(x == d - 1 for x in degs) == r
    assert all(x == d - 1 for x in degs[n - r:])


@pytest.mark.parametrize("n, d, k", [(300, 2, 3), (10, 1, 3), (200, 3, 4), (41, 2, 4), (7, 1, 2)])
def test_sample_linear_nearly_regular(n, d, k):
    h = sample_linear_nearly_regular(n, d, k, seed=3)
    _check_nearly_regular(h, n, d, k)


def test_partial_matching_example():
    h = sample_linear_nearly_regular(10, 1, 3, seed=0)
    assert h.m == 3
    assert h.degrees[9] == 0 and sum(h.degrees) == 9


def test_zero_degree_gives_empty():
    assert sample_linear_nearly_regular(6, 0, 3).m == 0


def test_sampler_determinism_and_replay():
    a = sample_linear_nearly_regular(60, 2, 3, seed=42)
    b = sample_linear_nearly_regular(60, 2, 3, seed=42)
    assert a == b
    ds = nearly_regular_degree_sequence(60, 2, 3)
    t = confmodel._first_success(ds, 42, 1000)
    assert collapse(trial_configuration(ds, 42, t)).to_hypergraph() == a
    assert trial_configuration(ds, 42, t) == trial_configuration(ds, 42, t)


def test_trials_exhausted():
    with pytest.raises(TrialsExhausted) as info:
        sample_linear_nearly_regular(200, 3, 4, seed=0, max_trials=3)
    assert info.value.max_trials == 3


def test_default_max_trials():
    assert default_max_trials(2, 3) == 739  # ceil(100 e^2)
    assert default_max_trials(1, 5) == 100
    assert default_max_trials(3, 4) == 10**7


@pytest.mark.parametrize("n, d, k", [(36, 4, 4), (33, 4, 3), (50, 3, 5)])
def test_greedy_linear_nearly_regular(n, d, k):
    h = greedy_linear_nearly_regular(n, d, k, seed=1)
    _check_nearly_regular(h, n, d, k)
    assert h == greedy_linear_nearly_regular(n, d, k, seed=1)


def test_poisson_experiment_degenerate():
    s = poisson_experiment(30, 1, 3, 50, seed=1)
    assert s.mean_loops == 0 and s.mean_overlaps == 0
    assert s.frac_defect_free == 1
    assert s.lambda_ == 0 and s.mu == 0 and s.predicted_success == 1.0


def test_poisson_experiment_json_shape():
    s = poisson_experiment(60, 2, 3, 200, seed=1)
    data = s.to_json()
    assert list(data) == ["trials_run", "mean_loops", "mean_overlaps", "frac_defect_free",
                          "lambda", "mu", "predicted_success"]
    assert data["trials_run"] == 200 and data["lambda"] == "1"
    assert 0 <= s.frac_defect_free <= 1


def test_poisson_experiment_independent_of_workers(monkeypatch):
    monkeypatch.setattr(confmodel, "_CHUNK", 16 * 7)
    one = poisson_experiment(40, 2, 3, 50, seed=9, workers=1)
    two = poisson_experiment(40, 2, 3, 50, seed=9, workers=2)
    assert one == two


def test_poisson_experiment_matches_reference_counts():
    ds = nearly_regular_degree_sequence(20, 2, 3)
    reps = [count_defects(trial_configuration(ds, 4, t)) for t in range(100)]
    s = poisson_experiment(20, 2, 3, 100, seed=4)
    assert s.mean_loops == Fraction(sum(r.loops for r in reps), 100)
    assert s.mean_overlaps == Fraction(sum(r.overlaps for r in reps), 100)
    assert s.frac_defect_free == Fraction(sum(r.defect_free for r in reps), 100)
