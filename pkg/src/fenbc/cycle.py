"""Linear-time weighted betweenness on a cycle.

Scores are carried as doubled integers (every pair contributes a whole or a
half unit times its weight), so the computation is exact until the final
division by two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np


class OppositeIndex(NamedTuple):
    phi: Fraction
    phi_left: int
    phi_right: int
    integral: bool


def opposite_index(i: int, q: int) -> OppositeIndex:
    """Position opposite ``i`` on a cycle ``x_0 .. x_q``.

    ``phi = ((q + 1) / 2 + i) mod (q + 1)``; ``phi_left`` and ``phi_right``
    are the nearest vertices strictly on either side of it.
    """
    if not 0 <= i <= q:
        raise ValueError("index out of range")
    n = q + 1
    two_phi = (n + 2 * i) % (2 * n)
    integral = two_phi % 2 == 0
    left = ((two_phi + 1) // 2 - 1) % n
    right = (two_phi // 2 + 1) % n
    return OppositeIndex(Fraction(two_phi, 2), left, right, integral)


@dataclass(frozen=True)
class CycleInstance:
    """Weights around a cycle ``x_0 .. x_q x_0``; ``prefix[i]`` is the sum of ``pend[0..i]``."""

    pend: np.ndarray
    prefix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pend = np.asarray(self.pend, dtype=np.int64)
        if pend.ndim != 1 or len(pend) < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if pend.min() < 1:
            raise ValueError("pend weights must be >= 1")
        object.__setattr__(self, "pend", pend)
        object.__setattr__(self, "prefix", np.cumsum(pend))

    @property
    def q(self) -> int:
        return len(self.pend) - 1

    def arc_weight(self, i: int, j: int) -> int:
        """Weight from ``x_i`` clockwise to ``x_j``, both included."""
        total = int(self.prefix[-1])
        lo = int(self.prefix[i - 1]) if i > 0 else 0
        if i <= j:
            return int(self.prefix[j]) - lo
        return total - lo + int(self.prefix[j])


def cycle_bc(c: CycleInstance | Sequence[int]) -> np.ndarray:
    """Weighted betweenness (ordered pairs) of every cycle position."""
    if not isinstance(c, CycleInstance):
        c = CycleInstance(c)
    p = c.pend
    n = len(p)
    even = n % 2 == 0
    # S[j] = sum of the first j entries of p repeated three times
    S = np.concatenate([[0], np.cumsum(np.tile(p, 3))])

    def span(a, count):
        # sum of p over indices a, a+1, .., a+count-1 (a may be negative)
        a = np.asarray(a) % n + n
        return S[a + count] - S[a]

    # base case at x_0, doubled
    i = np.arange(1, n)
    fwd = 2 * i < n
    lo = (2 * i + n) // 2 + 1
    full_fwd = np.where(fwd, S[n] - S[np.minimum(lo, n)], 0)
    back = 2 * i > n
    hi = (2 * i - n + 1) // 2 - 1
    full_back = np.where(back, S[np.maximum(hi, 0) + 1] - S[1], 0)
    half = np.zeros(n - 1, dtype=np.int64)
    if even:
        fwd_half = fwd & ((2 * i + n) // 2 < n)
        half[fwd_half] = p[(2 * i[fwd_half] + n) // 2]
        back_half = back
        half[back_half] = p[(2 * i[back_half] - n) // 2]
    bc0 = int(np.sum(p[1:] * (2 * (full_fwd + full_back) + half)))

    # x_k -> x_{k+1} step, doubled
    k = np.arange(n - 1)
    width = max((n + 1) // 2 - 2, 0)
    cw = span(k + 2, width)
    ccw = span(k + 1 - 1 - width, width) if width else np.zeros(n - 1, dtype=np.int64)
    delta = 4 * p[k] * cw - 4 * p[k + 1] * ccw
    if even:
        delta += 2 * p[k] * p[(k + n // 2) % n] - 2 * p[k + 1] * p[(k + 1 + n // 2) % n]
    doubled = np.concatenate([[bc0], bc0 + np.cumsum(delta)])
    return doubled / 2.0
