"""Whole-graph entry point: components, pruning, block split, per-block solve."""

from __future__ import annotations

import time
from enum import Enum

import numpy as np

from . import _kernels
from .brandes import brandes_weighted
from .decomposition import recombine, reduce_degree_one, split_blocks
from .fen import _lap, block_bc
from .graph import Graph, WeightedGraph
from .oracle import oracle_bc, oracle_to_float


class SolverChoice(str, Enum):
    AUTO = "auto"
    FEN = "fen"
    BRANDES = "brandes"
    ORACLE = "oracle"


def compute_bc(
    g: Graph,
    choice: SolverChoice | str = SolverChoice.AUTO,
    pend=None,
    threads: int = 1,
    timings: dict | None = None,
) -> np.ndarray:
    """Betweenness of every vertex, summed over ordered pairs.

    ``pend`` defaults to all ones. ``auto`` and ``fen`` run the
    decomposition pipeline; ``brandes`` and ``oracle`` solve the whole graph
    directly. ``timings`` collects per-phase seconds for the pipeline.
    """
    choice = SolverChoice(choice)
    pend = np.ones(g.n, dtype=np.int64) if pend is None else np.asarray(pend, dtype=np.int64)
    wg = WeightedGraph(g, pend)
    if choice is SolverChoice.BRANDES:
        return brandes_weighted(wg, threads=threads)
    if choice is SolverChoice.ORACLE:
        return oracle_to_float(oracle_bc(wg))
    return _fen_pipeline(wg, timings)


def _fen_pipeline(wg: WeightedGraph, timings: dict | None) -> np.ndarray:
    g = wg.graph
    n = g.n
    clock = time.perf_counter()
    # renumber in BFS order: components become contiguous id ranges and
    # neighbours sit close together in memory for the Python-level passes
    order = np.empty(n, dtype=np.int64)
    starts = np.empty(n + 1, dtype=np.int64)
    ncomp = _kernels.bfs_forest(g.indptr, g.indices, order, starts)
    inv = np.empty(n, dtype=np.int64)
    inv[order] = np.arange(n)
    edges = inv[g.edges()]
    edges.sort(axis=1)
    edges = edges[np.argsort(edges[:, 0], kind="stable")]
    edge_starts = np.searchsorted(edges[:, 0], starts[: ncomp + 1])
    pend = wg.pend[order]
    relabeled = np.zeros(n)
    _lap(timings, "reduce", clock)
    for c in range(ncomp):
        lo, hi = int(starts[c]), int(starts[c + 1])
        if hi - lo < 3:
            continue
        clock = time.perf_counter()
        part_edges = edges[edge_starts[c] : edge_starts[c + 1]] - lo
        part = WeightedGraph(Graph.from_edges(hi - lo, part_edges), pend[lo:hi])
        local = relabeled[lo:hi]
        reduced, log = reduce_degree_one(part, local)
        clock = _lap(timings, "reduce", clock)
        if reduced.n >= 3:
            blocks = split_blocks(reduced)
            _lap(timings, "split", clock)
            block_scores = [block_bc(b.subgraph, timings) for b in blocks]
            clock = time.perf_counter()
            local[log.kept] += recombine(block_scores, blocks, reduced)
            _lap(timings, "split", clock)
    scores = np.empty(n)
    scores[order] = relabeled
    return scores
