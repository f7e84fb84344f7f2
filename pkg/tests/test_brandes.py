from fractions import Fraction

import numpy as np
from helpers import petersen, rel_err
from hypothesis import given, settings
from hypothesis import strategies as st

from fenbc.brandes import accumulate_generalized, brandes_weighted, source_contribution, sssp_dag
from fenbc.generators import cycle, gnm_connected, rng_for, tree_plus_k
from fenbc.graph import Graph, WeightedGraph
from fenbc.oracle import oracle_bc, oracle_to_float


def p3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def k4():
    return Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def test_sssp_dag_examples():
    dag = sssp_dag(p3(), 0)
    assert dag.dist.tolist() == [0, 1, 2] and dag.sigma == [1, 1, 1]
    assert sssp_dag(cycle(4), 0).sigma[2] == 2
    dag = sssp_dag(k4(), 2)
    assert dag.dist.tolist() == [1, 1, 0, 1] and dag.successors[2] == [0, 1, 3]


def test_sssp_dag_invariants():
    g = gnm_connected(12, 20, rng_for(5))
    dag = sssp_dag(g, 3, exact=True)
    assert dag.sigma[3] == 1
    assert sum(len(s) for s in dag.successors) <= g.m
    dists = [int(dag.dist[v]) for v in dag.order]
    assert dists == sorted(dists, reverse=True)
    for v in range(g.n):
        for w in dag.successors[v]:
            assert dag.dist[w] == dag.dist[v] + 1
        preds = [u for u in g.adjacency[v] if dag.dist[u] == dag.dist[v] - 1]
        if v != 3:
            assert dag.sigma[v] == sum(dag.sigma[u] for u in preds)


def test_accumulate_examples():
    dag = sssp_dag(p3(), 0)
    assert accumulate_generalized(dag, lambda s, t: 0) == [0, 0, 0]
    assert accumulate_generalized(dag, lambda s, t: 1)[1:] == [1, 0]
    assert accumulate_generalized(sssp_dag(k4(), 1), lambda s, t: 1) == [0, 0, 0, 0]


def test_accumulate_accepts_rows():
    dag = sssp_dag(cycle(5), 0, exact=True)
    row = [Fraction(i + 1, 3) for i in range(5)]
    assert accumulate_generalized(dag, row) == accumulate_generalized(dag, lambda s, t: row[t])


def test_brandes_examples():
    assert brandes_weighted(p3()).tolist() == [0, 2, 0]
    assert brandes_weighted(cycle(4)).tolist() == [1, 1, 1, 1]
    assert np.allclose(brandes_weighted(petersen()), 6)


def test_brandes_handles_disconnected_and_isolated():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    assert brandes_weighted(g).tolist() == [0, 2, 0, 0, 0, 0]


def test_source_contribution_sums_to_total():
    rng = rng_for(2)
    g = tree_plus_k(25, 6, rng)
    wg = WeightedGraph(g, rng.integers(1, 4, g.n))
    total = sum(source_contribution(wg, s) for s in range(g.n))
    assert rel_err(total, brandes_weighted(wg)) < 1e-12


def test_threads_are_deterministic():
    rng = rng_for(4)
    g = tree_plus_k(300, 20, rng)
    one = brandes_weighted(g)
    assert np.array_equal(brandes_weighted(g, threads=3), brandes_weighted(g, threads=3))
    assert rel_err(brandes_weighted(g, threads=3), one) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 16), st.integers(0, 10), st.integers(0, 2**32))
def test_brandes_matches_oracle(n, extra, seed):
    rng = rng_for(seed)
    m = min(n - 1 + extra, n * (n - 1) // 2)
    g = gnm_connected(n, m, rng)
    wg = WeightedGraph(g, rng.integers(1, 6, n))
    assert rel_err(brandes_weighted(wg), oracle_to_float(oracle_bc(wg))) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 14), st.integers(0, 2**32))
def test_relabeling_permutes_scores(n, seed):
    rng = rng_for(seed)
    g = gnm_connected(n, min(n + 3, n * (n - 1) // 2), rng)
    perm = rng.permutation(n)
    h = Graph.from_edges(n, perm[g.edges()])
    assert rel_err(brandes_weighted(h)[perm], brandes_weighted(g)) < 1e-12
