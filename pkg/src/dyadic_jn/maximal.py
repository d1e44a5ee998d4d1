"""Dyadic maximal operators, average type and median type, evaluated exactly.

Both suprema run over the cubes of levels ``0..J`` containing a cell; finer
cubes sit inside one cell, where the function is constant, and add nothing.
Each cube's average or median is evaluated exactly once (one pass per level
over all cells), then a root-to-leaf sweep carries the running maximum down
to the children.  Cost: ``O(cells)`` per level for averages; for medians a
linear-time ``np.partition`` per level, so ``O(cells * (J + 1))`` overall.
"""

from __future__ import annotations

import numpy as np

from .grid import StepFunction
from .median import check_fraction, level_medians


def level_averages(f: StepFunction, level: int, absolute: bool = True) -> np.ndarray:
    blocks = f.blocks(level)
    if absolute:
        blocks = np.abs(blocks)
    return blocks.mean(axis=1)


def _refine(coarse: np.ndarray, dim: int, level: int) -> np.ndarray:
    # level -> level + 1: every cube hands its value to its 2^dim children
    x = coarse.reshape((2**level,) * dim)
    for axis in range(dim):
        x = np.repeat(x, 2, axis=axis)
    return x.reshape(-1)


def _sweep(f: StepFunction, per_level) -> np.ndarray:
    running = per_level(0)
    for level in range(1, f.depth + 1):
        running = np.maximum(_refine(running, f.dim, level - 1), per_level(level))
    return running


def maximal_avg(f: StepFunction) -> StepFunction:
    """``M^d f``: largest average of ``|f|`` over the dyadic cubes containing each cell."""
    return f.with_values(_sweep(f, lambda j: level_averages(f, j)))


def maximal_median(f: StepFunction, t: float) -> StepFunction:
    """Largest maximal ``t``-median of ``|f|`` over the dyadic cubes containing each cell."""
    check_fraction("t", t)
    return f.with_values(_sweep(f, lambda j: level_medians(f, j, t, absolute=True)))


def superlevel_measure(g: StepFunction, lam: float) -> float:
    """``|{x : g(x) > lam}|`` counted exactly on cells."""
    return int(np.count_nonzero(g.values > lam)) * g.grid.cell_measure
