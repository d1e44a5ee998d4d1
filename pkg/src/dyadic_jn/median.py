"""Maximal s-medians and median oscillations on dyadic cubes.

The maximal s-median of ``f`` over a set ``A`` is

    m(f, A, s) = inf { a : |{x in A : f(x) > a}| < s |A| }.

Order-statistic identity
------------------------
Let ``A`` consist of ``m`` cells of equal measure carrying the values
``v(1) >= v(2) >= ... >= v(m)`` (sorted descending, repeats allowed), and put
``k = ceil(s*m)``, so ``1 <= k <= m`` for ``0 < s <= 1``.  Then
``m(f, A, s) = v(k)``.

Proof.  Measures are cell counts times the common cell measure, so the
condition reads ``N(a) < s*m`` with ``N(a) = #{i : v_i > a}``.

* ``a = v(k)`` is admissible: every value strictly above ``v(k)`` sits at a
  sorted position ``< k``, hence ``N(v(k)) <= k - 1 < s*m`` because
  ``k - 1 < s*m <= k`` by the definition of the ceiling.
* No ``a < v(k)`` is admissible: ``v(1), ..., v(k)`` all exceed ``a``, so
  ``N(a) >= k >= s*m``.

``N`` is non-increasing, so the admissible set is ``[v(k), inf)`` and its
infimum is ``v(k)``.  Ties need no special care: the argument counts
positions, not distinct values.  ``k`` is computed in exact rational
arithmetic from the shortest decimal that round-trips to ``s``, so ``s = 0.7``
with ``m = 10`` gives ``k = 7`` and ``s = 0.1`` gives ``k = 1``; a rounded float
product, or the binary value of ``0.1`` (slightly above one tenth), would be
off by one.

Best constant
-------------
``inf_c m(|f - c|, A, s)`` is the smallest ``a`` such that some interval
``[c - a, c + a]`` holds at least ``q = m - k + 1`` of the values.  The
optimal interval is spanned by ``q`` consecutive sorted values, so the
infimum equals the smallest half-width ``(v[i+q-1] - v[i]) / 2`` over sliding
windows of the ascending sort, attained at the window midpoint.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .grid import DyadicCube, StepFunction


def check_fraction(name: str, value: float, upper: float = 1.0) -> float:
    value = float(value)
    if not (0 < value <= upper):
        bound = "1/2" if upper == 0.5 else repr(upper)
        raise ValidationError(f"{name} must satisfy 0 < {name} <= {bound}, got {value!r}")
    return value


def rank_for(s: float, m: int) -> int:
    """Position ``k = ceil(s*m)`` (1-based, descending) of the maximal s-median."""
    return max(1, min(m, math.ceil(Fraction(repr(float(s))) * m)))


def median_of(values, s: float) -> float:
    """Maximal s-median of equal-measure cells holding ``values``."""
    check_fraction("s", s)
    v = np.asarray(values, dtype=float).reshape(-1)
    m = v.size
    pos = m - rank_for(s, m)
    return float(np.partition(v, pos)[pos])


def block_medians(blocks: np.ndarray, s: float) -> np.ndarray:
    """Row-wise maximal s-median of a ``(cubes, cells)`` array."""
    m = blocks.shape[1]
    pos = m - rank_for(s, m)
    return np.partition(blocks, pos, axis=1)[:, pos]


def level_medians(f: StepFunction, level: int, s: float, absolute: bool = False) -> np.ndarray:
    """Maximal s-median of ``f`` (or ``|f|``) on every cube of a level, row-major."""
    check_fraction("s", s)
    blocks = f.blocks(level)
    return block_medians(np.abs(blocks) if absolute else blocks, s)


def maximal_median(f: StepFunction, Q: DyadicCube, s: float) -> float:
    return median_of(f.cube_values(Q), s)


def block_median_oscillation(blocks: np.ndarray, s: float, t: float) -> np.ndarray:
    """Row-wise ``m^s(|f - m^t(f)|)``."""
    centers = block_medians(blocks, t)
    return block_medians(np.abs(blocks - centers[:, None]), s)


def median_oscillation(f: StepFunction, Q: DyadicCube, s: float, t: float) -> float:
    check_fraction("s", s, 0.5)
    check_fraction("t", t, 0.5)
    if s > t:
        raise ValidationError(f"median_oscillation needs s <= t, got s={s}, t={t}")
    v = f.cube_values(Q)
    center = median_of(v, t)
    return median_of(np.abs(v - center), s)


def block_min_center(blocks: np.ndarray, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise ``(inf_c m^s(|f - c|), leftmost minimizing c)``."""
    m = blocks.shape[1]
    q = m - rank_for(s, m) + 1
    ordered = np.sort(blocks, axis=1)
    lo = ordered[:, : m - q + 1]
    hi = ordered[:, q - 1 :]
    widths = hi - lo
    best = np.argmin(widths, axis=1)
    rows = np.arange(blocks.shape[0])
    a, b = lo[rows, best], hi[rows, best]
    return (b - a) / 2, a + (b - a) / 2


def min_center_oscillation(f: StepFunction, Q: DyadicCube, s: float) -> tuple[float, float]:
    check_fraction("s", s, 0.5)
    value, center = block_min_center(f.cube_values(Q)[None, :], s)
    return float(value[0]), float(center[0])
