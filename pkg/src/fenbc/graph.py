"""Immutable simple undirected graphs with dense 0-based vertex ids."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed edge input (self-loops, bad lines)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored in CSR form.

    ``indices[indptr[v]:indptr[v + 1]]`` holds the strictly increasing
    neighbour list of ``v``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple | None = None
    duplicate_edges: int = 0
    _adj: list = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges, labels: Sequence | None = None) -> "Graph":
        """Build from an ``(m, 2)`` integer array; duplicates are collapsed."""
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        loops = np.flatnonzero(e[:, 0] == e[:, 1])
        if loops.size:
            raise GraphFormatError(f"self-loop on vertex {int(e[loops[0], 0])}")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = np.unique(lo * n + hi) if e.size else np.empty(0, np.int64)
        dup = len(e) - len(key)
        u, v = key // n, key % n
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst.astype(np.int64), tuple(labels) if labels is not None else None, dup)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        """Neighbour lists as plain Python lists (cached; for tight loops)."""
        if self._adj is None:
            flat = self.indices.tolist()
            ptr = self.indptr.tolist()
            object.__setattr__(self, "_adj", [flat[ptr[v] : ptr[v + 1]] for v in range(self.n)])
        return self._adj

    def edges(self) -> np.ndarray:
        """Edge array ``(m, 2)`` with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def label(self, v: int) -> Hashable:
        return self.labels[v] if self.labels is not None else v

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices``; returns it with the local->global map."""
        verts = np.asarray(vertices, dtype=np.int64)
        local = np.full(self.n, -1, dtype=np.int64)
        local[verts] = np.arange(len(verts))
        e = self.edges()
        keep = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
        return Graph.from_edges(len(verts), local[e[keep]]), verts

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """A graph plus positive integer vertex weights (pending-mass counters)."""

    graph: Graph
    pend: np.ndarray

    def __post_init__(self):
        pend = np.asarray(self.pend, dtype=np.int64)
        if pend.shape != (self.graph.n,):
            raise ValueError("pend must have one entry per vertex")
        if pend.size and pend.min() < 1:
            raise ValueError("pend weights must be >= 1")
        object.__setattr__(self, "pend", pend)

    @classmethod
    def unit(cls, graph: Graph) -> "WeightedGraph":
        return cls(graph, np.ones(graph.n, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class DegreePartition:
    deg1: frozenset
    deg2: frozenset
    deg3plus: frozenset


def build_graph(pairs: Iterable[tuple[str, str]], lines: Sequence[int] | None = None) -> Graph:
    """Build a graph from token pairs, numbering vertices by first appearance.

    ``lines`` optionally gives the source line of each pair for error messages;
    by default pair ``i`` is reported as line ``i + 1``.
    """
    ids: dict = {}
    edges = []
    for i, (a, b) in enumerate(pairs):
        if a == b:
            raise GraphFormatError("self-loop", lines[i] if lines is not None else i + 1)
        edges.append((ids.setdefault(a, len(ids)), ids.setdefault(b, len(ids))))
    labels = list(ids)
    return Graph.from_edges(len(labels), np.array(edges, dtype=np.int64).reshape(-1, 2), labels)


def degree_partition(g: Graph) -> DegreePartition:
    deg = g.degrees
    return DegreePartition(
        frozenset(np.flatnonzero(deg == 1).tolist()),
        frozenset(np.flatnonzero(deg == 2).tolist()),
        frozenset(np.flatnonzero(deg >= 3).tolist()),
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Components ordered by their smallest vertex; members sorted ascending."""
    adj = g.adjacency
    comp = [-1] * g.n
    out = []
    for root in range(g.n):
        if comp[root] >= 0:
            continue
        cid = len(out)
        comp[root] = cid
        members = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = cid
                    members.append(w)
                    queue.append(w)
        members.sort()
        out.append(members)
    return out


def feedback_edge_set(g: Graph) -> list[tuple[int, int]]:
    """Non-tree edges of a BFS spanning forest; a minimum feedback edge set."""
    adj = g.adjacency
    seen = [False] * g.n
    tree = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    tree.add((min(v, w), max(v, w)))
                    queue.append(w)
    return [(int(u), int(v)) for u, v in g.edges() if (u, v) not in tree]


def feedback_edge_number(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    """Return ``(k, edges)`` where ``k = m - n + c`` and ``edges`` is a feedback edge set of size ``k``."""
    edges = feedback_edge_set(g)
    return len(edges), edges
