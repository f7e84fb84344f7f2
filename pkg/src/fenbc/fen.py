"""Betweenness of a biconnected weighted block in O(k n).

Pairs with an endpoint of degree at least three are handled by one
accumulation per such source. Pairs of degree-two vertices are handled per
maximal induced path: credits for path vertices are written directly and
credits for vertices between path endpoints are deferred into the ``inc``
table, which the final accumulation flushes.

Half-integral split positions use doubled integers throughout.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .cycle import cycle_bc
from .decomposition import MaxPath, find_max_paths
from .graph import WeightedGraph

MUTATIONS = ("tie_denominator", "drop_xv_factor2", "skip_shared_guard")
_active: set = set()


@contextmanager
def mutation(name: str) -> Iterator[None]:
    """Temporarily break one rule on purpose; used to check that the self-test notices."""
    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}")
    _active.add(name)
    try:
        yield
    finally:
        _active.discard(name)


def _tie_den(sigma):
    return sigma if "tie_denominator" in _active else sigma + 1


class RoutingError(ValueError):
    """Raised when a block must be handled by another solver (cycles)."""


@dataclass(frozen=True)
class SourceTables:
    """BFS tables for every vertex of degree at least three.

    Row ``row[s]`` of ``dist``/``sigma``/``order`` belongs to source ``s``;
    ``row[v] == -1`` for other vertices. ``order[i, :reached[i]]`` is the
    BFS visit order, which is all the accumulation sweep needs.
    """

    sources: np.ndarray
    row: np.ndarray
    dist: np.ndarray
    sigma: np.ndarray
    order: np.ndarray
    reached: np.ndarray

    def d(self, s: int, t: int) -> int:
        return int(self.dist[self.row[s], t])

    def sig(self, s: int, t: int) -> float:
        return float(self.sigma[self.row[s], t])


@dataclass(frozen=True)
class IncTable:
    """Deferred per-target coefficients, one row per degree-three source."""

    inc: np.ndarray
    row: np.ndarray

    def __getitem__(self, st: tuple[int, int]) -> float:
        s, t = st
        return float(self.inc[self.row[s], t])


def init_tables(block: WeightedGraph) -> tuple[SourceTables, IncTable]:
    """Run one BFS per degree-three vertex and seed ``inc``.

    ``inc[s, t] = 2 pend[s] pend[t] / sigma_st`` for degree-two targets and
    ``pend[s] pend[t] / sigma_st`` for other targets ``t != s``.
    """
    g = block.graph
    n = g.n
    deg = g.degrees
    if n and np.all(deg == 2):
        raise RoutingError("cycle blocks go to the cycle solver")
    sources = np.flatnonzero(deg >= 3)
    row = np.full(n, -1, dtype=np.int64)
    row[sources] = np.arange(len(sources))
    ks = len(sources)
    dist = np.full((ks, n), -1, dtype=np.int64)
    sigma = np.zeros((ks, n))
    order = np.empty((ks, n), dtype=np.int64)
    reached = np.zeros(ks, dtype=np.int64)
    _kernels.sources_tables(g.indptr, g.indices, sources, dist, sigma, order, reached)
    pend = block.pend.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        inc = np.where(sigma > 0, pend[sources][:, None] * pend[None, :] / sigma, 0.0)
    inc[:, deg == 2] *= 2.0
    inc[np.arange(ks), sources] = 0.0
    return SourceTables(sources, row, dist, sigma, order, reached), IncTable(inc, row)


@dataclass(frozen=True)
class PathPrefix:
    """``wleft[i] = pend[x_0] + .. + pend[x_i]`` and ``wright[i] = pend[x_i] + .. + pend[x_q]``."""

    wleft: np.ndarray
    wright: np.ndarray

    def inner_upto(self, i):
        """Weight of inner vertices ``x_1 .. x_i`` (zero for ``i <= 0``)."""
        i = np.asarray(i)
        return np.where(i >= 1, self.wleft[np.maximum(i, 0)] - self.wleft[0], 0)

    def inner_from(self, i):
        """Weight of inner vertices ``x_i .. x_{q-1}`` (zero for ``i >= q``)."""
        i = np.asarray(i)
        q = len(self.wright) - 1
        return np.where(i <= q - 1, self.wright[np.minimum(i, q)] - self.wright[q], 0)


def path_prefix_sums(p: MaxPath, pend: Sequence[int]) -> PathPrefix:
    w = np.asarray(pend)[list(p.vertices)].astype(np.int64)
    return PathPrefix(np.cumsum(w), np.cumsum(w[::-1])[::-1])


class SplitPoints(NamedTuple):
    """Inner indices ``1..xleft`` leave through ``x_0``, ``xright..q-1`` through ``x_q``; ``xmid`` ties."""

    xleft: int
    xmid: int | None
    xright: int
    two_i: int


def _split(q, d0, dq):
    two_i = q - d0 + dq
    xleft = np.clip((two_i + 1) // 2 - 1, 0, q - 1)
    xright = np.clip(two_i // 2 + 1, 1, q)
    has_mid = (two_i % 2 == 0) & (two_i > 0) & (two_i < 2 * q)
    return two_i, xleft, xright, has_mid


def split_points(p: MaxPath, t: int, tables: SourceTables) -> SplitPoints:
    """Where the inner vertices of ``p`` switch from exiting via ``x_0`` to exiting via ``x_q`` on the way to ``t``."""
    x0, xq = p.ends
    two_i, xl, xr, mid = _split(p.q, tables.d(x0, t), tables.d(xq, t))
    return SplitPoints(int(xl), int(two_i // 2) if mid else None, int(xr), int(two_i))


@dataclass
class _Slots:
    """Inner vertices of a list of paths laid out contiguously, path by path."""

    t: np.ndarray
    pid: np.ndarray
    k: np.ndarray
    r: np.ndarray
    y0: np.ndarray
    yr: np.ndarray
    start: np.ndarray
    end: np.ndarray
    seg: np.ndarray
    path_y0: np.ndarray
    path_yr: np.ndarray


def _slots(paths: Sequence[MaxPath], pids: Sequence[int] | None = None) -> _Slots:
    pids = range(len(paths)) if pids is None else pids
    t, pid, k, r, y0, yr, start, end, seg = [], [], [], [], [], [], [], [], []
    for p, a in zip(paths, pids):
        m = p.q - 1
        seg.append(len(t))
        t.extend(p.inner)
        pid.extend([a] * m)
        k.extend(range(1, p.q))
        r.extend([p.q] * m)
        y0.extend([p.vertices[0]] * m)
        yr.extend([p.vertices[-1]] * m)
        start.extend([seg[-1]] * m)
        end.extend([seg[-1] + m] * m)
    arr = lambda x: np.asarray(x, dtype=np.int64)  # noqa: E731
    return _Slots(
        arr(t), arr(pid), arr(k), arr(r), arr(y0), arr(yr), arr(start), arr(end), arr(seg),
        arr([p.vertices[0] for p in paths]), arr([p.vertices[-1] for p in paths]),
    )


def _process_pairs(
    p1: MaxPath,
    a: int,
    pend: np.ndarray,
    slots: _Slots,
    tables: SourceTables,
    inc: IncTable | None,
    scores: np.ndarray | None,
) -> None:
    """All pairs (inner of ``p1``, inner of another path) at once.

    Writes the deferred coefficients for vertices between the two paths into
    ``inc`` and the credits for the vertices of the second path into
    ``scores``. Both orientations of each pair are credited to the second
    path; the first path is credited when the roles are swapped.
    """
    if len(slots.t) == 0:
        return
    x0, xq = p1.ends
    q = p1.q
    prefix = path_prefix_sums(p1, pend)
    r0, rq = tables.row[x0], tables.row[xq]
    T, Y0, Yr, K, R = slots.t, slots.y0, slots.yr, slots.k, slots.r
    d0, dq = tables.dist[r0, T], tables.dist[rq, T]
    s0, sq = tables.sigma[r0, T], tables.sigma[rq, T]

    two_i, xl, xr, mid = _split(q, d0, dq)
    wl = prefix.inner_upto(xl)
    wr = prefix.inner_from(xr)
    inner_w = pend[np.asarray(p1.vertices)]
    pmid = np.where(mid, inner_w[np.clip(two_i // 2, 0, q)], 0)
    other = slots.pid != a
    pt = pend[T] * other
    base0 = pt * (wl / s0 + pmid / (s0 + sq))
    baseq = pt * (wr / sq + pmid / (s0 + sq))

    # route indicators: psi in {x0, xq} reaches t through phi in {y0, yr}
    e00 = tables.dist[r0, Y0] + K == d0
    e0r = tables.dist[r0, Yr] + (R - K) == d0
    eq0 = tables.dist[rq, Y0] + K == dq
    eqr = tables.dist[rq, Yr] + (R - K) == dq
    c00, c0r = base0 * e00, base0 * e0r
    cq0, cqr = baseq * eq0, baseq * eqr

    guard = "skip_shared_guard" not in _active
    if inc is not None:
        n = inc.inc.shape[1]
        for psi, phi, c in ((x0, Y0, c00), (x0, Yr, c0r), (xq, Y0, cq0), (xq, Yr, cqr)):
            w = c * (phi != psi) if guard else c
            inc.inc[inc.row[psi]] += np.bincount(phi, weights=w, minlength=n)

    if scores is None:
        return
    k00 = c00 * tables.sigma[r0, Y0]
    k0r = c0r * tables.sigma[r0, Yr]
    kq0 = cq0 * tables.sigma[rq, Y0]
    kqr = cqr * tables.sigma[rq, Yr]
    A0 = k00 + kq0
    Ar = k0r + kqr
    E0 = np.concatenate([[0.0], np.cumsum(A0)])
    Er = np.concatenate([[0.0], np.cumsum(Ar)])
    idx = np.arange(len(T))
    inner_credit = (E0[slots.end] - E0[idx + 1]) + (Er[idx] - Er[slots.start])
    tot0 = np.add.reduceat(A0, slots.seg)
    totr = np.add.reduceat(Ar, slots.seg)
    if guard:
        own0 = np.add.reduceat(k00 * (Y0 == x0) + kq0 * (Y0 == xq), slots.seg)
        ownr = np.add.reduceat(k0r * (Yr == x0) + kqr * (Yr == xq), slots.seg)
    else:
        own0 = ownr = 0.0
    factor = 1.0 if "drop_xv_factor2" in _active else 2.0
    n = len(scores)
    scores += np.bincount(T, weights=factor * inner_credit, minlength=n)
    scores += np.bincount(slots.path_y0, weights=factor * tot0 - own0, minlength=n)
    scores += np.bincount(slots.path_yr, weights=factor * totr - ownr, minlength=n)


def pair_outside(p1: MaxPath, p2: MaxPath, tables: SourceTables, inc: IncTable, pend: Sequence[int]) -> IncTable:
    """Deferred coefficients for vertices strictly between ``p1`` and ``p2``, pairs from ``p1`` to ``p2``."""
    if p1 == p2:
        raise ValueError("paths must differ")
    _process_pairs(p1, 0, np.asarray(pend), _slots([p2], [1]), tables, inc, None)
    return inc


def pair_inside(p1: MaxPath, p2: MaxPath, tables: SourceTables, pend: Sequence[int]) -> np.ndarray:
    """Credits on the vertices of ``p2`` from pairs between the inner vertices of ``p1`` and ``p2``.

    Both orientations of every pair are included. At a vertex shared by the
    two paths the zero-length connector's share is counted once, so the two
    visits ``(p1, p2)`` and ``(p2, p1)`` together give the exact value there.
    """
    if p1 == p2:
        raise ValueError("paths must differ")
    pend = np.asarray(pend)
    scores = np.zeros(len(pend))
    _process_pairs(p1, 0, pend, _slots([p2], [1]), tables, None, scores)
    return scores


def classify_sigma_ratio(
    p: MaxPath, i: int, j: int, v_class: str, tables: SourceTables, sigma_v: int | None = None
) -> Fraction:
    """Share of shortest ``x_i``-``x_j`` paths through a vertex of the given class.

    ``v_class`` is ``"inside"`` (on the path between ``x_i`` and ``x_j``),
    ``"on_path_outside"`` (on the path, outside that range, endpoints
    included) or ``"off_path"``. For off-path vertices the share is
    proportional to the number of shortest ``x_0``-``x_q`` paths through the
    vertex: the coefficient is returned, or the share itself when
    ``sigma_v`` is given.
    """
    if not 1 <= i < j <= p.q - 1:
        raise ValueError("need 1 <= i < j <= q - 1")
    x0, xq = p.ends
    big_d = tables.d(x0, xq)
    sig = int(round(tables.sig(x0, xq)))
    d_in = j - i
    d_out = i + big_d + p.q - j
    if v_class == "inside":
        r = Fraction(1) if d_in < d_out else Fraction(1, _tie_den(sig)) if d_in == d_out else Fraction(0)
    elif v_class == "on_path_outside":
        r = Fraction(0) if d_in < d_out else Fraction(sig, _tie_den(sig)) if d_in == d_out else Fraction(1)
    elif v_class == "off_path":
        r = Fraction(0) if d_in < d_out else Fraction(1, _tie_den(sig)) if d_in == d_out else Fraction(1, sig)
        if sigma_v is not None:
            r *= sigma_v
    else:
        raise ValueError(f"unknown vertex class {v_class!r}")
    return r


class _PathGeometry(NamedTuple):
    w: np.ndarray  # inner weights at indices 0..q, endpoints zeroed
    pre: np.ndarray  # pre[x + 1] = w[0] + .. + w[x]
    half_in: int  # largest strictly-inside offset
    tie: int | None  # tie offset, if any
    sigma: float


def _geometry(p: MaxPath, pend: np.ndarray, tables: SourceTables) -> _PathGeometry:
    x0, xq = p.ends
    w = pend[list(p.vertices)].astype(np.float64)
    w[0] = w[-1] = 0.0
    two_m = tables.d(x0, xq) + p.q
    tie = two_m // 2 if two_m % 2 == 0 else None
    return _PathGeometry(w, np.concatenate([[0.0], np.cumsum(w)]), (two_m - 1) // 2, tie, tables.sig(x0, xq))


def _range_sum(g: _PathGeometry, lo, hi):
    q = len(g.w) - 1
    lo = np.clip(lo, 0, q + 1)
    hi = np.clip(hi, -1, q)
    return np.where(lo <= hi, g.pre[np.maximum(hi, lo - 1) + 1] - g.pre[lo], 0.0)


def _at(g: _PathGeometry, idx):
    q = len(g.w) - 1
    idx = np.asarray(idx)
    ok = (idx >= 0) & (idx <= q)
    return np.where(ok, g.w[np.clip(idx, 0, q)], 0.0)


def single_inside_alpha(p: MaxPath, pend: Sequence[int], tables: SourceTables) -> np.ndarray:
    """Credits at ``x_k`` from pairs ``x_i, x_j`` of the same path with ``i < k < j`` routed inside it.

    Indexed ``0..q``; both orientations counted, endpoints get zero.
    """
    g = _geometry(p, np.asarray(pend), tables)
    q = p.q
    tie_w = 1.0 / _tie_den(g.sigma)
    k = np.arange(2, q)
    a = k - 1
    # pairs (k-1, j) now contain x_k; pairs (i, k) no longer contain it
    gain = _range_sum(g, a + 2, np.minimum(a + g.half_in, q - 1))
    lose = _range_sum(g, np.maximum(k - g.half_in, 1), k - 2)
    if g.tie is not None and g.tie >= 2:
        gain = gain + tie_w * _at(g, np.where(a + g.tie <= q - 1, a + g.tie, -1))
        lose = lose + tie_w * _at(g, np.where(k - g.tie >= 1, k - g.tie, -1))
    delta = 2.0 * (g.w[a] * gain - g.w[k] * lose)
    alpha = np.zeros(q + 1)
    alpha[2:q] = np.cumsum(delta)
    return alpha


def single_outside_beta(
    p: MaxPath, pend: Sequence[int], tables: SourceTables, inc: IncTable | None = None
) -> tuple[np.ndarray, float]:
    """Credits on path vertices from same-path pairs routed around the outside.

    Returns ``(beta, X)`` where ``beta`` is indexed ``0..q`` and ``X`` is the
    coefficient for the shortest ``x_0``-``x_q`` paths outside the path. If
    ``inc`` is given, ``X`` is added to ``inc[x_0, x_q]``.
    """
    g = _geometry(p, np.asarray(pend), tables)
    q = p.q
    sig = g.sigma
    tie_den = _tie_den(sig)
    out_off = g.tie + 1 if g.tie is not None else g.half_in + 1
    i = np.arange(1, q)
    strict = _range_sum(g, i + out_off, q - 1)
    tie = _at(g, i + g.tie) if g.tie is not None else np.zeros(len(i))
    x_coef = 2.0 * float(np.sum(g.w[i] * (strict / sig + tie / tie_den)))
    beta0 = 2.0 * float(np.sum(g.w[i] * (strict + tie * sig / tie_den)))

    k = np.arange(0, q - 1)
    # step x_k -> x_{k+1}: gain pairs ending at x_k, lose pairs starting at x_{k+1}
    gain = _range_sum(g, np.ones_like(k), k - out_off)
    lose = _range_sum(g, k + 1 + out_off, q - 1)
    if g.tie is not None:
        gain = gain + (sig / tie_den) * _at(g, np.where(k - g.tie >= 1, k - g.tie, -1))
        lose = lose + (sig / tie_den) * _at(g, np.where(k + 1 + g.tie <= q - 1, k + 1 + g.tie, -1))
    delta = 2.0 * (g.w[k] * gain - g.w[k + 1] * lose)
    beta = np.empty(q + 1)
    beta[0] = beta0
    beta[1:q] = beta0 + np.cumsum(delta)
    beta[q] = beta0
    if inc is not None and x_coef:
        x0, xq = p.ends
        inc.inc[inc.row[x0], xq] += x_coef
    return beta, x_coef


def postprocess(block: WeightedGraph, tables: SourceTables, inc: IncTable) -> np.ndarray:
    """One accumulation per degree-three source with ``f(s, t) = inc[s, t]``."""
    g = block.graph
    scores = np.zeros(g.n)
    _kernels.flush_rows(
        g.indptr, g.indices, tables.sources, tables.dist, tables.sigma, tables.order, tables.reached, inc.inc, scores
    )
    return scores


def cycle_order(block: WeightedGraph) -> list[int]:
    """Vertices of a cycle block in walking order starting from vertex 0."""
    adj = block.graph.adjacency
    walk = [0]
    prev, cur = -1, 0
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == 0:
            return walk
        walk.append(nxt)
        prev, cur = cur, nxt


def block_bc(block: WeightedGraph, timings: dict | None = None) -> np.ndarray:
    """Weighted betweenness (ordered pairs) of a biconnected block or a bridge.

    ``timings``, if given, accumulates seconds spent in the ``tables``,
    ``paths`` and ``postprocess`` phases.
    """
    g = block.graph
    n = g.n
    if n <= 2:
        return np.zeros(n)
    deg = g.degrees
    if np.any(deg < 2):
        raise ValueError("block must be biconnected")
    if np.all(deg == 2):
        walk = cycle_order(block)
        if len(walk) != n:
            raise ValueError("block is not connected")
        out = np.zeros(n)
        out[walk] = cycle_bc(block.pend[walk])
        return out

    clock = time.perf_counter()
    tables, inc = init_tables(block)
    clock = _lap(timings, "tables", clock)
    if timings is not None:
        size = sum(a.nbytes for a in (tables.dist, tables.sigma, tables.order, inc.inc))
        timings["table_bytes"] = max(timings.get("table_bytes", 0), size)
    if np.any(tables.reached != n):
        raise ValueError("block is not connected")
    pend = block.pend
    paths = find_max_paths(g)
    scores = np.zeros(n)
    slots = _slots(paths)
    for a, p in enumerate(paths):
        _process_pairs(p, a, pend, slots, tables, inc, scores)
    for p in paths:
        idx = list(p.vertices)
        alpha = single_inside_alpha(p, pend, tables)
        beta, _ = single_outside_beta(p, pend, tables, inc)
        np.add.at(scores, idx, alpha + beta)
    clock = _lap(timings, "paths", clock)
    scores += postprocess(block, tables, inc)
    _lap(timings, "postprocess", clock)
    return scores


def _lap(timings: dict | None, phase: str, since: float) -> float:
    now = time.perf_counter()
    if timings is not None:
        timings[phase] = timings.get(phase, 0.0) + now - since
    return now
