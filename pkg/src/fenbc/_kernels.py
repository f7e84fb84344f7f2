"""Compiled inner loops over CSR adjacency arrays.

All kernels release the GIL so callers can run disjoint source ranges on
worker threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def bfs_count(indptr, indices, s, dist, sigma, order):
    """BFS from ``s`` filling hop distances, path counts and visit order.

    ``dist`` must be pre-filled with -1 and ``sigma`` with 0. Returns the
    number of reached vertices; ``order[:reached]`` is non-decreasing in dist.
    """
    dist[s] = 0
    sigma[s] = 1.0
    order[0] = s
    head = 0
    tail = 1
    while head < tail:
        v = order[head]
        head += 1
        dv = dist[v] + 1
        sv = sigma[v]
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv
                order[tail] = w
                tail += 1
            if dist[w] == dv:
                sigma[w] += sv
    return tail


@njit(cache=True, nogil=True)
def accumulate(indptr, indices, dist, sigma, order, reached, f, chi):
    """Backward sweep: ``chi[v] = sum_w chi[w] * sigma[v] / sigma[w] + f[w] * sigma[v]`` over successors."""
    for i in range(reached - 1, -1, -1):
        v = order[i]
        dv = dist[v] + 1
        acc = 0.0
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] == dv:
                acc += chi[w] / sigma[w] + f[w]
        chi[v] = acc * sigma[v]


@njit(cache=True, nogil=True)
def brandes_range(indptr, indices, pend, lo, hi, scores):
    """Add the weighted contributions of sources ``lo..hi-1`` into ``scores``."""
    n = len(indptr) - 1
    dist = np.full(n, -1, np.int64)
    sigma = np.zeros(n, np.float64)
    order = np.empty(n, np.int64)
    # delta[w] = (chi[w] + pend[s] * pend[w]) / sigma[w], one division per vertex
    delta = np.zeros(n, np.float64)
    for s in range(lo, hi):
        reached = bfs_count(indptr, indices, s, dist, sigma, order)
        ps = pend[s]
        for i in range(reached - 1, 0, -1):
            v = order[i]
            dv = dist[v] + 1
            acc = 0.0
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if dist[w] == dv:
                    acc += delta[w]
            chi = acc * sigma[v]
            scores[v] += chi
            delta[v] = (chi + ps * pend[v]) / sigma[v]
        for i in range(reached):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0


@njit(cache=True, nogil=True)
def sources_tables(indptr, indices, sources, dist, sigma, order, reached):
    """BFS from every vertex in ``sources``; row ``i`` of each table belongs to ``sources[i]``."""
    for i in range(len(sources)):
        reached[i] = bfs_count(indptr, indices, sources[i], dist[i], sigma[i], order[i])


@njit(cache=True, nogil=True)
def flush_rows(indptr, indices, sources, dist, sigma, order, reached, inc, scores):
    """Generalized accumulation with ``f = inc[i]`` for each source row, summed into ``scores``."""
    n = len(indptr) - 1
    chi = np.zeros(n, np.float64)
    for i in range(len(sources)):
        accumulate(indptr, indices, dist[i], sigma[i], order[i], reached[i], inc[i], chi)
        s = sources[i]
        for j in range(reached[i]):
            v = order[i, j]
            if v != s:
                scores[v] += chi[v]
            chi[v] = 0.0


@njit(cache=True, nogil=True)
def bfs_forest(indptr, indices, order, comp_start):
    """BFS over every component; fills ``order`` and the start offset of each component.

    Roots are taken in increasing id, so components come out ordered by
    their smallest vertex. Returns the number of components.
    """
    n = len(indptr) - 1
    seen = np.zeros(n, np.bool_)
    tail = 0
    ncomp = 0
    for root in range(n):
        if seen[root]:
            continue
        comp_start[ncomp] = tail
        ncomp += 1
        seen[root] = True
        order[tail] = root
        head = tail
        tail += 1
        while head < tail:
            v = order[head]
            head += 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if not seen[w]:
                    seen[w] = True
                    order[tail] = w
                    tail += 1
    comp_start[ncomp] = n
    return ncomp
