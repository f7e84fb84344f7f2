from fractions import Fraction

import numpy as np
import pytest
from helpers import petersen
from hypothesis import given, settings
from hypothesis import strategies as st

from fenbc.generators import cycle, gnm_connected, rng_for
from fenbc.graph import Graph, WeightedGraph
from fenbc.oracle import OracleCapExceeded, all_pairs_counts, oracle_bc, oracle_pair_dependency


def p3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def k4():
    return Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def test_oracle_examples():
    assert oracle_bc(p3()) == [0, 2, 0]
    assert oracle_bc(cycle(4)) == [1, 1, 1, 1]
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert oracle_bc(star)[0] == 6


def test_oracle_scores_are_exact_fractions():
    assert all(isinstance(x, Fraction) for x in oracle_bc(cycle(6)))


def test_pair_dependency_examples():
    dep = oracle_pair_dependency(cycle(4), 1, 3)
    assert dep.connected and dep.ratios == [Fraction(1, 2), 0, Fraction(1, 2), 0]
    assert oracle_pair_dependency(p3(), 0, 2).ratios == [0, 1, 0]
    assert oracle_pair_dependency(k4(), 0, 3).ratios == [0, 0, 0, 0]


def test_pair_dependency_disconnected_flag():
    dep = oracle_pair_dependency(Graph.from_edges(4, [(0, 1), (2, 3)]), 0, 3)
    assert not dep.connected and dep.ratios == [0, 0, 0, 0]


def test_oracle_cap():
    with pytest.raises(OracleCapExceeded):
        oracle_bc(cycle(30), cap=20)


def test_vertex_transitive_equal_scores():
    assert set(oracle_bc(petersen())) == {6}
    assert len(set(oracle_bc(cycle(9)))) == 1


def test_weighted_sum_identity():
    rng = rng_for(3)
    g = gnm_connected(9, 13, rng)
    pend = rng.integers(1, 5, g.n)
    scores = oracle_bc(WeightedGraph(g, pend))
    dist, _ = all_pairs_counts(g)
    want = sum(int(pend[s]) * int(pend[t]) * (int(dist[s, t]) - 1) for s in range(g.n) for t in range(g.n) if s != t)
    assert sum(scores) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 10), st.integers(0, 8), st.integers(0, 2**32))
def test_pair_dependency_sum_and_symmetry(n, extra, seed):
    m = min(n - 1 + extra, n * (n - 1) // 2)
    g = gnm_connected(n, m, rng_for(seed))
    dist, _ = all_pairs_counts(g)
    rng = np.random.default_rng(seed)
    s, t = (int(x) for x in rng.choice(n, 2, replace=False))
    fwd = oracle_pair_dependency(g, s, t).ratios
    assert sum(fwd) == dist[s, t] - 1
    assert fwd == oracle_pair_dependency(g, t, s).ratios
