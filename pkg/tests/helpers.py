"""Graphs and generators shared by the test modules."""

from __future__ import annotations

import numpy as np

from fenbc.graph import Graph, WeightedGraph, build_graph

PRUNING_EDGES = [("a", "c"), ("a", "d"), ("b", "d"), ("d", "e"), ("d", "f"), ("e", "f"), ("f", "g"), ("f", "h"), ("g", "h")]


def pruning_example() -> Graph:
    """Two triangles sharing ``f``, with the pending trees ``b`` and ``a - c`` hanging off ``d``."""
    g = build_graph(PRUNING_EDGES)
    # relabel so vertex ids follow the letters a..h
    order = sorted(range(g.n), key=g.label)
    inv = np.empty(g.n, dtype=np.int64)
    inv[order] = np.arange(g.n)
    return Graph.from_edges(g.n, inv[g.edges()], [g.label(v) for v in order])


def detour_example(n_d: int = 7) -> Graph:
    """Path ``x_0 .. x_5`` closed through ``x_0 - a_i - b - q - c - d_i - x_5``.

    Vertex ids: ``x_0..x_5`` are 0..5, then ``a_1, a_2, b, q, c`` and the ``d_i``.
    """
    labels = [f"x{i}" for i in range(6)] + ["a1", "a2", "b", "q", "c"] + [f"d{i + 1}" for i in range(n_d)]
    idx = {name: i for i, name in enumerate(labels)}
    pairs = [(f"x{i}", f"x{i + 1}") for i in range(5)]
    pairs += [("x0", "a1"), ("x0", "a2"), ("a1", "b"), ("a2", "b"), ("b", "q"), ("q", "c")]
    for i in range(n_d):
        pairs += [("c", f"d{i + 1}"), (f"d{i + 1}", "x5")]
    return Graph.from_edges(len(labels), [(idx[a], idx[b]) for a, b in pairs], labels)


def c8_chords() -> Graph:
    """C8 on ``v0..v7`` plus chords ``v0v2`` and ``v4v6``."""
    return Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(0, 2), (4, 6)])


def triangles_bridge() -> Graph:
    """Triangles ``{0, 1, 2}`` and ``{3, 4, 5}`` joined by the bridge ``2 - 3``."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_block(rng: np.random.Generator, max_n: int = 60, max_k: int = 12) -> Graph:
    """Random biconnected graph built from a cycle by adding ears.

    Every ear is a path between two distinct existing vertices, so the
    result stays biconnected; each ear raises the feedback edge number by one.
    """
    while True:
        n = int(rng.integers(3, 12))
        edges = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
        k_target = int(rng.integers(2, max_k + 1))
        k = 1
        while k < k_target:
            u, v = (int(x) for x in rng.choice(n, 2, replace=False))
            inner = int(rng.integers(0, 5))
            if n + inner > max_n:
                break
            if inner == 0:
                e = (min(u, v), max(u, v))
                if e in edges:
                    continue
                edges.add(e)
            else:
                walk = [u] + list(range(n, n + inner)) + [v]
                n += inner
                edges.update((min(a, b), max(a, b)) for a, b in zip(walk, walk[1:]))
            k += 1
        g = Graph.from_edges(n, sorted(edges))
        if np.any(g.degrees >= 3):
            return g


def weighted(g: Graph, rng: np.random.Generator, hi: int = 5) -> WeightedGraph:
    return WeightedGraph(g, rng.integers(1, hi + 1, g.n))


def rel_err(a, ref) -> float:
    a = np.asarray(a, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if a.size == 0:
        return 0.0
    scale = np.where(ref != 0, np.abs(ref), max(float(np.max(np.abs(ref))), 1.0))
    return float(np.max(np.abs(a - ref) / scale))


def pair_class_scores(wg: WeightedGraph, keep) -> list:
    """Exact ``sum pend[s] pend[t] sigma_st(v) / sigma_st`` over ordered pairs with ``keep(s, t)``."""
    from fractions import Fraction

    from fenbc.oracle import all_pairs_counts

    dist, sigma = all_pairs_counts(wg.graph)
    n = wg.n
    pend = [int(x) for x in wg.pend]
    out = [Fraction(0)] * n
    for s in range(n):
        for t in range(n):
            if s == t or dist[s, t] < 2 or not keep(s, t):
                continue
            for v in range(n):
                if v not in (s, t) and dist[s, v] >= 0 and dist[s, v] + dist[v, t] == dist[s, t]:
                    out[v] += Fraction(pend[s] * pend[t] * sigma[s, v] * sigma[v, t], sigma[s, t])
    return out


def random_connected(n: int, extra: int, rng: np.random.Generator) -> Graph:
    """Connected graph with ``n - 1 + extra`` edges.

    Uniform G(n, m) rejection sampling is used while connected draws are
    reasonably likely; sparser requests fall back to a random tree plus
    ``extra`` edges.
    """
    from fenbc.generators import gnm_connected, tree_plus_k

    extra = min(extra, n * (n - 1) // 2 - (n - 1))
    if n <= 16 or extra >= n // 5 + 4:
        return gnm_connected(n, n - 1 + extra, rng)
    return tree_plus_k(n, extra, rng)
