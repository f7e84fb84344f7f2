"""Single-source shortest-path DAGs, generalized dependency accumulation and
the weighted Brandes baseline."""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from . import _kernels
from .graph import Graph, WeightedGraph


@dataclass(frozen=True)
class SourceDAG:
    """Shortest-path DAG rooted at ``source``.

    ``dist`` is ``-1`` for unreachable vertices. ``sigma`` holds floats, or
    Python ints when built with ``exact=True``. ``order`` lists reached
    vertices by non-increasing distance.
    """

    source: int
    dist: np.ndarray
    sigma: list
    successors: list
    order: list


def sssp_dag(g: Graph, s: int, exact: bool = False) -> SourceDAG:
    """BFS from ``s`` recording distances, path counts and successor lists.

    Successors are listed in ascending vertex id.
    """
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} not in graph")
    adj = g.adjacency
    n = g.n
    dist = [-1] * n
    sigma = [0] * n if exact else [0.0] * n
    dist[s] = 0
    sigma[s] = 1 if exact else 1.0
    visit = [s]
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                visit.append(w)
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    succ = [[w for w in adj[v] if dist[w] == dist[v] + 1] if dist[v] >= 0 else [] for v in range(n)]
    return SourceDAG(s, np.array(dist, dtype=np.int64), sigma, succ, visit[::-1])


FValue = Union[Callable[[int, int], object], np.ndarray, list]


def accumulate_generalized(dag: SourceDAG, f: FValue) -> list:
    """Return ``chi[v] = sum_t f(s, t) * sigma_st(v)`` for every vertex.

    ``f`` is either a callable ``f(s, t)`` or a sequence indexed by ``t``.
    The sweep runs the recursion
    ``chi_sv = sum_{w in succ(v)} (chi_sw * sigma_sv / sigma_sw + f(s, w) * sigma_sv)``
    backwards over ``dag.order``. Arithmetic is generic, so exact integer
    counts with rational ``f`` give exact results. ``chi[s]`` is reported
    as 0.
    """
    s = dag.source
    if callable(f):
        fv = lambda w: f(s, w)  # noqa: E731
    else:
        fv = f.__getitem__
    sigma = dag.sigma
    exact = isinstance(sigma[s], int)
    chi = [0] * len(sigma)
    for v in dag.order:
        if v == s:
            continue
        sv = sigma[v]
        acc = 0
        for w in dag.successors[v]:
            ratio = Fraction(sv, sigma[w]) if exact else sv / sigma[w]
            acc += chi[w] * ratio + fv(w) * sv
        chi[v] = acc
    return chi


def source_contribution(wg: WeightedGraph, s: int) -> np.ndarray:
    """Compiled per-source contribution with ``f(s, t) = pend[s] * pend[t] / sigma_st``."""
    g = wg.graph
    scores = np.zeros(g.n)
    _kernels.brandes_range(g.indptr, g.indices, wg.pend.astype(np.float64), s, s + 1, scores)
    return scores


def bfs_relabel(g: Graph) -> np.ndarray:
    """Vertex order of a BFS sweep over all components; ``perm[new] = old``.

    Renumbering along this order keeps neighbours close in memory, which
    matters for the all-sources sweep on large sparse graphs.
    """
    n = g.n
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    perm = []
    for root in range(n):
        if dist[root] < 0:
            reached = _kernels.bfs_count(g.indptr, g.indices, root, dist, sigma, order)
            perm.append(order[:reached].copy())
    return np.concatenate(perm) if perm else np.empty(0, dtype=np.int64)


def brandes_weighted(wg: WeightedGraph | Graph, threads: int = 1) -> np.ndarray:
    """Weighted betweenness over ordered pairs by one accumulation per source.

    Vertices are renumbered in BFS order before the sweep and scores mapped
    back afterwards. With ``threads > 1`` the sources are cut into contiguous
    ranges, each worker fills its own buffer and the buffers are summed in
    range order, so the result does not depend on scheduling.
    """
    if isinstance(wg, Graph):
        wg = WeightedGraph.unit(wg)
    g = wg.graph
    n = g.n
    perm = bfs_relabel(g)
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    h = Graph.from_edges(n, inv[g.edges()])
    pend = wg.pend[perm].astype(np.float64)
    threads = max(1, min(threads, n // 2))
    bounds = np.linspace(0, n, threads + 1).astype(np.int64)
    buffers = [np.zeros(n) for _ in range(threads)]

    def work(i):
        _kernels.brandes_range(h.indptr, h.indices, pend, int(bounds[i]), int(bounds[i + 1]), buffers[i])

    if threads == 1:
        work(0)
    else:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(work, range(threads)))
    total = np.zeros(n)
    for buf in buffers:
        total += buf
    scores = np.empty(n)
    scores[perm] = total
    return scores
