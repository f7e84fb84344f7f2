"""Seeded synthetic graph families.

Randomness comes from numpy's ``Philox`` bit generator (Philox-4x64 with
10 rounds, a counter-based generator) keyed by ``FamilySpec.seed``, so
a given :class:`FamilySpec` always yields the same edge list.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components

FAMILIES = ("tree_plus_k", "cycle", "gnm_connected", "theta")


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one generated graph.

    ``k`` is the number of extra edges for ``tree_plus_k``, ``m`` the edge
    count for ``gnm_connected`` and ``arms`` the edge lengths of the theta
    graph's paths between its two hubs.
    """

    family: str
    n: int = 0
    k: int | None = None
    m: int | None = None
    arms: tuple = ()
    seed: int = 0
    max_tries: int = 100_000


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def prufer_tree(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random labelled tree on ``n`` vertices, decoded from a random sequence."""
    if n <= 1:
        return np.empty((0, 2), dtype=np.int64)
    if n == 2:
        return np.array([[0, 1]], dtype=np.int64)
    seq = rng.integers(0, n, n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return np.array(edges, dtype=np.int64)


def _pair_index_to_edge(idx: np.ndarray, n: int) -> np.ndarray:
    u_all = np.arange(n - 1)
    row_start = u_all * n - u_all * (u_all + 1) // 2
    u = np.searchsorted(row_start, idx, side="right") - 1
    v = idx - row_start[u] + u + 1
    return np.column_stack([u, v])


def _edge_key(e: np.ndarray, n: int) -> np.ndarray:
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    return lo * n + hi


def tree_plus_k(n: int, k: int, rng: np.random.Generator) -> Graph:
    """Random tree plus ``k`` distinct non-tree edges; feedback edge number exactly ``k``."""
    if n < 1:
        raise InfeasibleSpec("n must be positive")
    free = n * (n - 1) // 2 - (n - 1)
    if not 0 <= k <= free:
        raise InfeasibleSpec(f"k={k} not in [0, {free}]")
    tree = prufer_tree(n, rng)
    taken = set(_edge_key(tree, n).tolist())
    extra = []
    total = n * (n - 1) // 2
    if k > free // 2:
        # dense request: enumerate the complement and sample it
        all_e = _pair_index_to_edge(np.arange(total), n)
        mask = ~np.isin(_edge_key(all_e, n), np.fromiter(taken, dtype=np.int64))
        pool = all_e[mask]
        extra = pool[rng.choice(len(pool), k, replace=False)]
    else:
        while len(extra) < k:
            idx = rng.integers(0, total, 2 * (k - len(extra)) + 8)
            for e in _pair_index_to_edge(idx, n).tolist():
                key = e[0] * n + e[1]
                if key not in taken:
                    taken.add(key)
                    extra.append(e)
                    if len(extra) == k:
                        break
    edges = np.concatenate([tree, np.asarray(extra, dtype=np.int64).reshape(-1, 2)])
    return Graph.from_edges(n, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise InfeasibleSpec("a cycle needs n >= 3")
    v = np.arange(n)
    return Graph.from_edges(n, np.column_stack([v, (v + 1) % n]))


def theta(*arms: int) -> Graph:
    """Hubs 0 and 1 joined by internally disjoint paths with the given edge counts.

    At most one arm may have length 1 (a direct hub edge).
    """
    if len(arms) < 2 or min(arms) < 1 or sum(a == 1 for a in arms) > 1:
        raise InfeasibleSpec(f"bad theta arms {arms}")
    edges = []
    nxt = 2
    for length in arms:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def gnm_connected(n: int, m: int, rng: np.random.Generator, max_tries: int = 100_000) -> Graph:
    """Uniform connected graph with ``n`` vertices and ``m`` edges by rejection sampling."""
    total = n * (n - 1) // 2
    if n < 1 or not (n - 1 <= m <= total):
        raise InfeasibleSpec(f"m={m} not in [{n - 1}, {total}]")
    for _ in range(max_tries):
        idx = rng.choice(total, m, replace=False) if m else np.empty(0, dtype=np.int64)
        g = Graph.from_edges(n, _pair_index_to_edge(np.sort(idx), n))
        if len(connected_components(g)) == 1:
            return g
    raise InfeasibleSpec(f"no connected G({n},{m}) after {max_tries} draws")


def generate(spec: FamilySpec) -> Graph:
    rng = rng_for(spec.seed)
    if spec.family == "tree_plus_k":
        return tree_plus_k(spec.n, spec.k or 0, rng)
    if spec.family == "cycle":
        return cycle(spec.n)
    if spec.family == "theta":
        return theta(*spec.arms)
    if spec.family == "gnm_connected":
        if spec.m is None:
            raise InfeasibleSpec("gnm_connected needs m")
        return gnm_connected(spec.n, spec.m, rng, spec.max_tries)
    raise InfeasibleSpec(f"unknown family {spec.family!r}")
