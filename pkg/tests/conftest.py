import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bergesat.hypercore import Hypergraph  # noqa: E402


@st.composite
def hypergraphs(draw, max_n=7, ks=(2, 3, 4), max_edges=None):
    k = draw(st.sampled_from(ks))
    n = draw(st.integers(min_value=0, max_value=max_n))
    universe = list(combinations(range(n), k))
    if not universe:
        return Hypergraph(n, k)
    size = len(universe) if max_edges is None else min(max_edges, len(universe))
    chosen = draw(st.lists(st.sampled_from(universe), unique=True, max_size=size))
    return Hypergraph(n, k, chosen)


@pytest.fixture
def single_edge():
    return Hypergraph(3, 3, [(0, 1, 2)])
