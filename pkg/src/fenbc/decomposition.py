"""Preprocessing that shrinks a graph to biconnected weighted blocks.

Three steps live here: pruning pending trees into ``pend`` weights,
splitting at cut vertices with one pass over the block-cut tree, and
listing the maximal induced paths of a block.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import Graph, WeightedGraph, degree_partition, feedback_edge_number


class ConsistencyError(RuntimeError):
    pass


class ReductionRecord(NamedTuple):
    removed: int
    neighbor: int
    removed_pend: int
    credit: int


@dataclass
class ReductionLog:
    """Removals in processing order, stored column-wise; ``kept`` are the surviving vertex ids."""

    removed: np.ndarray
    neighbor: np.ndarray
    removed_pend: np.ndarray
    credit: np.ndarray
    kept: np.ndarray

    @property
    def records(self) -> list[ReductionRecord]:
        cols = (self.removed, self.neighbor, self.removed_pend, self.credit)
        return [ReductionRecord(*r) for r in zip(*(c.tolist() for c in cols))]

    def credits(self, n: int) -> np.ndarray:
        return np.bincount(self.neighbor, weights=self.credit.astype(np.float64), minlength=n)


def reduce_degree_one(wg: WeightedGraph, scores: np.ndarray | None = None) -> tuple[WeightedGraph, ReductionLog]:
    """Prune pending trees, folding each removed vertex into its neighbour.

    Removing ``s`` with neighbour ``v`` moves ``pend[s]`` onto ``v`` and
    credits ``v`` with ``2 * pend[s] * (total - pend[s] - pend[v])``, which
    counts the pairs routed through ``v`` in both directions. Vertices are
    removed in FIFO order seeded with the initial degree-one vertices. The
    input should be connected. If ``scores`` is given the credits are added
    to it in place. The returned graph is induced on ``log.kept`` with ids
    renumbered in ascending order.
    """
    g = wg.graph
    n = g.n
    adj = g.adjacency
    pend = wg.pend.tolist()
    total = sum(pend)
    deg = g.degrees.tolist()
    alive = [True] * n
    queue = deque(v for v in range(n) if deg[v] == 1)
    removed, neighbor, moved, credit = [], [], [], []
    while queue:
        s = queue.popleft()
        if deg[s] != 1:
            continue
        for v in adj[s]:
            if alive[v]:
                break
        ps, pv = pend[s], pend[v]
        removed.append(s)
        neighbor.append(v)
        moved.append(ps)
        credit.append(2 * ps * (total - ps - pv))
        pend[v] = pv + ps
        alive[s] = False
        deg[s] = 0
        deg[v] -= 1
        if deg[v] == 1:
            queue.append(v)
    kept = np.flatnonzero(alive)
    as_int = lambda x: np.asarray(x, dtype=np.int64)  # noqa: E731
    log = ReductionLog(as_int(removed), as_int(neighbor), as_int(moved), as_int(credit), kept)
    if scores is not None and removed:
        scores += log.credits(n)
    if len(kept) == n:
        return wg, log
    sub, _ = g.subgraph(kept)
    return WeightedGraph(sub, np.asarray(pend, dtype=np.int64)[kept]), log


@dataclass(frozen=True)
class CopyRecord:
    """A cut vertex as seen from one block: ``pend`` of the copy is ``xi + added_pend``."""

    cut_original: int
    block_vertex: int
    xi: int
    added_pend: int


@dataclass(frozen=True)
class Block:
    """One biconnected piece (or bridge) with weights and the map back to input ids."""

    subgraph: WeightedGraph
    to_original: np.ndarray
    copies: tuple


def biconnected_components(g: Graph) -> list[list[tuple[int, int]]]:
    """Edge lists of the biconnected components (iterative Tarjan)."""
    n = g.n
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    clock = 0
    out = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        edges = []
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] < 0:
                    edges.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edges.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if descended:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                comp = []
                while True:
                    e = edges.pop()
                    comp.append(e)
                    if e == (u, v):
                        break
                out.append(comp)
    return out


def split_blocks(wg: WeightedGraph) -> list[Block]:
    """Split a connected weighted graph at its cut vertices.

    Each block receives a copy of each of its cut vertices whose weight is
    the cut vertex's own weight plus all weight beyond it as seen from the
    block. The weights come from subtree sums over the block-cut tree rooted
    at the first block, so the whole split is linear.
    """
    g = wg.graph
    n = g.n
    pend = wg.pend
    comps = biconnected_components(g)
    if not comps:
        return [Block(wg, np.arange(n), ())]
    vsets = [np.unique(np.asarray(c, dtype=np.int64)) for c in comps]
    membership = np.zeros(n, dtype=np.int64)
    for vs in vsets:
        membership[vs] += 1
    cut = np.flatnonzero(membership > 1)
    if cut.size == 0:
        return [Block(wg, np.arange(n), ())]

    nb = len(comps)
    cut_node = {int(c): nb + i for i, c in enumerate(cut)}
    is_cut = membership > 1
    # node masses: blocks carry their non-cut vertices, cut nodes their own weight
    mass = [int(pend[vs[~is_cut[vs]]].sum()) for vs in vsets] + [int(pend[c]) for c in cut]
    tree = [[] for _ in range(nb + len(cut))]
    for b, vs in enumerate(vsets):
        for c in vs[is_cut[vs]].tolist():
            tree[b].append(cut_node[c])
            tree[cut_node[c]].append(b)
    parent = [-1] * len(tree)
    parent[0] = 0
    order = [0]
    for x in order:
        for y in tree[x]:
            if parent[y] < 0:
                parent[y] = x
                order.append(y)
    parent[0] = -1
    sub = mass[:]
    for x in reversed(order[1:]):
        sub[parent[x]] += sub[x]
    total = sub[0]
    if total != int(pend.sum()):
        raise ConsistencyError("split_blocks expects a connected graph")

    blocks = []
    for b, vs in enumerate(vsets):
        local = {int(v): i for i, v in enumerate(vs.tolist())}
        e = np.array([(local[a], local[c]) for a, c in comps[b]], dtype=np.int64)
        bp = pend[vs].copy()
        copies = []
        for i, v in enumerate(vs.tolist()):
            if not is_cut[v]:
                continue
            node = cut_node[v]
            side = sub[node] if parent[node] == b else total - sub[b]
            bp[i] = side
            copies.append(CopyRecord(v, i, int(pend[v]), side - int(pend[v])))
        blocks.append(Block(WeightedGraph(Graph.from_edges(len(vs), e), bp), vs, tuple(copies)))
    return blocks


def recombine(block_scores, blocks: list[Block], wg: WeightedGraph) -> np.ndarray:
    """Fold per-block scores back onto the vertices of ``wg``.

    A cut vertex collects, from each incident block, its copy's score plus
    ``added_pend * (block weight other than the copy)`` for the pairs that
    enter the block through it.
    """
    if len(block_scores) != len(blocks):
        raise ConsistencyError("missing block score")
    out = np.zeros(wg.n)
    for sc, blk in zip(block_scores, blocks):
        if sc is None or len(sc) != blk.subgraph.n:
            raise ConsistencyError("missing or mis-sized block score")
        sc = np.asarray(sc, dtype=np.float64)
        out[blk.to_original] += sc
        bp = blk.subgraph.pend
        inside = int(bp.sum())
        for c in blk.copies:
            out[c.cut_original] += c.added_pend * (inside - int(bp[c.block_vertex]))
    return out


@dataclass(frozen=True)
class MaxPath:
    """Maximal induced path ``x_0 .. x_q``: inner vertices have degree two, endpoints do not."""

    vertices: tuple

    @property
    def q(self) -> int:
        return len(self.vertices) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def inner(self) -> tuple:
        return self.vertices[1:-1]


class CycleInputError(ValueError):
    pass


def find_max_paths(g: Graph) -> list[MaxPath]:
    """All maximal induced paths of a biconnected non-cycle graph.

    Paths are oriented with the smaller endpoint first and sorted by their
    first two vertices.
    """
    deg = g.degrees
    adj = g.adjacency
    if g.n and np.all(deg == 2):
        raise CycleInputError("graph is a cycle")
    if np.any(deg == 1):
        raise ValueError("graph has degree-one vertices")
    paths = []
    for u in np.flatnonzero(deg >= 3).tolist():
        for w in adj[u]:
            if deg[w] != 2:
                continue
            walk = [u, w]
            prev, cur = u, w
            while deg[cur] == 2:
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
                walk.append(cur)
            if cur == u:
                raise ValueError("degree-two cycle hanging on a single vertex")
            if u < cur:
                paths.append(MaxPath(tuple(walk)))
    paths.sort(key=lambda p: p.vertices[:2])
    if __debug__:
        k, _ = feedback_edge_number(g)
        part = degree_partition(g)
        assert len(part.deg3plus) <= min(g.n, 2 * k)
        assert len(paths) <= min(g.n, 3 * k)
    return paths
