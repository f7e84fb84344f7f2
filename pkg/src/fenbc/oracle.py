"""Brute-force exact betweenness with big-integer path counts.

This module is a test tool. It evaluates the definition literally over all
ordered pairs and keeps every quantity rational, so any disagreement with a
fast solver is attributable to the fast solver.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, WeightedGraph

DEFAULT_CAP = 200


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PairDependency:
    """Exact ``sigma_st(v) / sigma_st`` for every ``v``; ``connected`` is False when t is unreachable."""

    ratios: list
    connected: bool


def _as_weighted(g) -> WeightedGraph:
    return g if isinstance(g, WeightedGraph) else WeightedGraph.unit(g)


def all_pairs_counts(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Distances (``-1`` if unreachable) and exact path counts as Python ints."""
    n = g.n
    adj = g.adjacency
    dist = np.full((n, n), -1, dtype=np.int64)
    sigma = np.zeros((n, n), dtype=object)
    for s in range(n):
        d = [-1] * n
        sg = [0] * n
        d[s] = 0
        sg[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if d[w] < 0:
                    d[w] = d[v] + 1
                    queue.append(w)
                if d[w] == d[v] + 1:
                    sg[w] += sg[v]
        dist[s] = d
        sigma[s] = sg
    return dist, sigma


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleCapExceeded(f"oracle refuses n={n} (cap {cap})")


def oracle_bc(g, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """Exact weighted betweenness over ordered pairs.

    Accepts a :class:`Graph` (unit weights) or a :class:`WeightedGraph`.
    Numerators are summed as integers per distinct ``sigma_st`` and only
    turned into fractions at the end.
    """
    wg = _as_weighted(g)
    n = wg.n
    _check_cap(n, cap)
    if n == 0:
        return []
    dist, sigma = all_pairs_counts(wg.graph)
    pend = [int(x) for x in wg.pend]
    by_denominator: dict[int, np.ndarray] = {}
    for s in range(n):
        ds = dist[s]
        for t in range(n):
            dst = ds[t]
            if t == s or dst < 2:
                continue
            on = (ds >= 0) & (ds + dist[:, t] == dst)
            on[s] = on[t] = False
            idx = np.flatnonzero(on)
            den = sigma[s, t]
            acc = by_denominator.get(den)
            if acc is None:
                acc = by_denominator[den] = np.zeros(n, dtype=object)
            acc[idx] += (pend[s] * pend[t]) * (sigma[s, idx] * sigma[idx, t])
    out = [Fraction(0)] * n
    for den, acc in by_denominator.items():
        for v in range(n):
            if acc[v]:
                out[v] += Fraction(acc[v], den)
    return out


def oracle_pair_dependency(g, s: int, t: int, cap: int = DEFAULT_CAP) -> PairDependency:
    """Exact ratios ``sigma_st(v) / sigma_st``; zero at ``s`` and ``t``."""
    wg = _as_weighted(g)
    n = wg.n
    _check_cap(n, cap)
    if s == t:
        raise ValueError("s and t must differ")
    dist, sigma = all_pairs_counts(wg.graph)
    ratios = [Fraction(0)] * n
    if dist[s, t] < 0:
        return PairDependency(ratios, False)
    for v in range(n):
        if v in (s, t) or dist[s, v] < 0:
            continue
        if dist[s, v] + dist[v, t] == dist[s, t]:
            ratios[v] = Fraction(sigma[s, v] * sigma[v, t], sigma[s, t])
    return PairDependency(ratios, True)


def oracle_to_float(scores: list[Fraction]) -> np.ndarray:
    return np.array([float(x) for x in scores], dtype=np.float64)
