"""Dyadic John–Nirenberg seminorms as maximum-weight antichains.

A collection of pairwise disjoint dyadic cubes is exactly an antichain of
the dyadic tree, and every cube carries a nonnegative weight
``|Q| * osc(f, Q)**p``.  The supremum over collections therefore solves

    best(Q) = max(weight(Q), sum of best(child) over the 2**n children)

bottom-up from the finest level, where ``best(cell) = 0`` because ``f`` is
constant on a cell.  Countable collections reduce to finite ones here: any
cube below the finest level lies inside a cell and has weight zero, so only
the finitely many cubes of levels ``0..J`` can contribute.

Three oscillations are available:

``avg-mean``     mean absolute deviation about the mean,
``med-optimal``  ``inf_c m^s(|f - c|)`` via the sliding-window minimizer,
``med-center``   ``m^s(|f - m^t(f)|)``, the median-centred surrogate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .czd import CubeCollection
from .errors import ResourceError, ValidationError
from .grid import DyadicCube, StepFunction, level_blocks
from .median import block_median_oscillation, block_min_center, check_fraction

MODES = ("avg-mean", "med-optimal", "med-center")
CLAMP_RELATIVE = 1e-15
BRUTEFORCE_LIMIT = 2**10


@dataclass(frozen=True)
class SeminormConfig:
    p: float
    mode: str = "avg-mean"
    s: float | None = None
    t: float | None = None

    def __post_init__(self):
        p = float(self.p)
        if not (np.isfinite(p) and p > 1):
            raise ValidationError(f"p must be > 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}; choose one of {', '.join(MODES)}")
        if self.mode == "avg-mean":
            if self.s is not None or self.t is not None:
                raise ValidationError("avg-mean mode takes neither s nor t")
            return
        if self.s is None:
            raise ValidationError(f"{self.mode} mode needs s")
        object.__setattr__(self, "s", check_fraction("s", self.s, 0.5))
        if self.mode == "med-optimal":
            if self.t is not None:
                raise ValidationError("med-optimal mode takes no t")
            return
        if self.t is None:
            raise ValidationError("med-center mode needs t")
        object.__setattr__(self, "t", check_fraction("t", self.t, 0.5))
        if self.s > self.t:
            raise ValidationError(f"med-center mode needs s <= t, got s={self.s}, t={self.t}")

    def to_dict(self) -> dict:
        return {"p": self.p, "mode": self.mode, "s": self.s, "t": self.t}


def block_oscillation(blocks: np.ndarray, cfg: SeminormConfig) -> np.ndarray:
    if cfg.mode == "avg-mean":
        means = blocks.mean(axis=1)
        return np.abs(blocks - means[:, None]).mean(axis=1)
    if cfg.mode == "med-optimal":
        return block_min_center(blocks, cfg.s)[0]
    return block_median_oscillation(blocks, cfg.s, cfg.t)


def cube_weight(f: StepFunction, Q: DyadicCube, cfg: SeminormConfig) -> float:
    """``|Q| * osc(f, Q)**p`` for one cube (no clamping)."""
    osc = block_oscillation(f.cube_values(Q)[None, :], cfg)[0]
    return float(Q.measure(f.grid) * osc**cfg.p)


def weight_scale(f: StepFunction, p: float) -> float:
    """``|Q0| * max|f|**p``: every oscillation is at most ``2 max|f|``."""
    peak = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    return f.grid.root_measure * peak**p


def weight_table(f: StepFunction, cfg: SeminormConfig) -> list[np.ndarray]:
    """Per-level arrays of clamped cube weights (row-major within a level)."""
    floor = CLAMP_RELATIVE * weight_scale(f, cfg.p)
    table = []
    for level in range(f.depth + 1):
        if level == f.depth:
            w = np.zeros(f.grid.n_cubes(level))
        else:
            w = f.grid.measure(level) * block_oscillation(f.blocks(level), cfg) ** cfg.p
            w = np.where(w < floor, 0.0, w)
        table.append(w)
    return table


@dataclass(frozen=True)
class SeminormReport:
    value: float
    value_p: float
    optimum: CubeCollection
    per_cube_weights: tuple[tuple[DyadicCube, float], ...]
    config: SeminormConfig

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "value_p": self.value_p,
            "config": self.config.to_dict(),
            "optimum": self.optimum.to_list(),
            "per_cube_weights": [
                {"level": c.level, "index": list(c.index), "weight": w} for c, w in self.per_cube_weights
            ],
        }


def _child_sums(best_child_level: np.ndarray, dim: int, level: int) -> np.ndarray:
    # children of each level-`level` cube as columns, in DyadicCube.children() order
    cols = level_blocks(best_child_level, dim, level + 1, level)
    acc = cols[:, 0].copy()
    for e in range(1, cols.shape[1]):
        acc = acc + cols[:, e]
    return acc


def _report(f: StepFunction, cfg: SeminormConfig, value_p: float, cubes, table) -> SeminormReport:
    optimum = CubeCollection(tuple(cubes))
    pairs = tuple((c, float(table[c.level][c.flat_index()])) for c in optimum)
    value_p = float(value_p)
    return SeminormReport(value_p ** (1.0 / cfg.p), value_p, optimum, pairs, cfg)


def jn_seminorm(f: StepFunction, cfg: SeminormConfig) -> SeminormReport:
    """Exact seminorm and an optimal antichain.

    On a tie between a cube and the sum over its children the children win,
    so the reported optimum is the deepest one and is empty for constants.
    """
    table = weight_table(f, cfg)
    J, n = f.depth, f.dim
    best = table[J]
    take = [None] * (J + 1)
    take[J] = table[J] > 0
    for level in range(J - 1, -1, -1):
        csum = _child_sums(best, n, level)
        w = table[level]
        take[level] = w > csum
        best = np.where(take[level], w, csum)

    cubes: list[DyadicCube] = []
    open_ = np.ones(1, dtype=bool)
    for level in range(J + 1):
        chosen = np.flatnonzero(open_ & take[level])
        per_side = 2**level
        for flat in chosen:
            cubes.append(DyadicCube(level, tuple(int(k) for k in np.unravel_index(int(flat), (per_side,) * n))))
        if level < J:
            rest = (open_ & ~take[level]).reshape((per_side,) * n)
            for axis in range(n):
                rest = np.repeat(rest, 2, axis=axis)
            open_ = rest.reshape(-1)
    return _report(f, cfg, best[0], cubes, table)


def antichain_count(dim: int, depth: int) -> int:
    """Number of antichains among the cubes of levels ``0..depth-1`` (cells excluded)."""
    if depth == 0:
        return 1
    count = 2
    for _ in range(depth - 1):
        count = 1 + count ** (2**dim)
    return count


def jn_seminorm_bruteforce(f: StepFunction, cfg: SeminormConfig) -> SeminormReport:
    """Enumerate every antichain and keep the heaviest; the oracle for :func:`jn_seminorm`.

    Cells are left out of the enumeration since their weight is identically
    zero.  Totals are summed child by child in the same order as the DP, so
    the two agree bit for bit.
    """
    count = antichain_count(f.dim, f.depth)
    if count > BRUTEFORCE_LIMIT:
        raise ResourceError(
            f"{count} antichains for dim={f.dim}, depth={f.depth}; brute force is capped at {BRUTEFORCE_LIMIT}"
        )
    table = weight_table(f, cfg)
    J = f.depth

    def options(cube: DyadicCube) -> list[tuple[float, tuple[DyadicCube, ...]]]:
        if cube.level == J:
            return [(0.0, ())]
        combos = []
        for choice in itertools.product(*(options(c) for c in cube.children())):
            total = choice[0][0]
            for t, _ in choice[1:]:
                total = total + t
            combos.append((total, tuple(q for _, cs in choice for q in cs)))
        combos.append((float(table[cube.level][cube.flat_index()]), (cube,)))
        return combos

    candidates = options(DyadicCube(0, (0,) * f.dim))
    best_total, best_cubes = candidates[0]
    for total, cubes in candidates[1:]:
        if total > best_total:
            best_total, best_cubes = total, cubes
    return _report(f, cfg, best_total, best_cubes, table)


@dataclass(frozen=True)
class CompanionNorms:
    p: float
    l1: float
    lp: float
    weak_lp: float
    llogl: float
    bmo: float

    def to_dict(self) -> dict:
        return {"p": self.p, "L1": self.l1, "Lp": self.lp, "weak_Lp": self.weak_lp, "LlogL": self.llogl, "BMO": self.bmo}


def weak_lp(f: StepFunction, p: float) -> float:
    """``sup_lam lam * |{|f| > lam}|**(1/p)``, attained as ``lam`` rises to a value of ``|f|``."""
    a = np.sort(np.abs(f.values))[::-1]
    if a.size == 0 or a[0] == 0:
        return 0.0
    # for value a[i], |{|f| >= a[i]}| counts every cell holding a value >= a[i]
    counts = np.searchsorted(-a, -a, side="right")
    return float(np.max(a * (counts * f.grid.cell_measure) ** (1.0 / p)))


def dyadic_bmo(f: StepFunction) -> float:
    best = 0.0
    for level in range(f.depth):
        blocks = f.blocks(level)
        osc = np.abs(blocks - blocks.mean(axis=1)[:, None]).mean(axis=1)
        best = max(best, float(osc.max()))
    return best


def companion_norms(f: StepFunction, p: float = 2.0) -> CompanionNorms:
    p = float(p)
    if not p > 1:
        raise ValidationError(f"p must be > 1, got {p}")
    a = np.abs(f.values)
    h = f.grid.cell_measure
    with np.errstate(divide="ignore"):
        logs = np.where(a > 0, np.log(np.where(a > 0, a, 1.0)), 0.0)
    return CompanionNorms(
        p=p,
        l1=float(a.sum() * h),
        lp=float((np.sum(a**p) * h) ** (1.0 / p)),
        weak_lp=weak_lp(f, p),
        llogl=float(np.sum(a * np.maximum(logs, 0.0)) * h),
        bmo=dyadic_bmo(f),
    )
