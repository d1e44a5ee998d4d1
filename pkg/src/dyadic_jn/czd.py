"""Median Calderón–Zygmund stopping time and the level sets it describes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import PreconditionError, ValidationError
from .grid import DyadicCube, DyadicGrid, StepFunction
from .median import block_medians, check_fraction, level_medians


@dataclass(frozen=True)
class CubeCollection:
    """Pairwise disjoint dyadic cubes, kept in canonical ``(level, index)`` order."""

    cubes: tuple[DyadicCube, ...] = ()

    def __post_init__(self):
        cubes = tuple(sorted(self.cubes))
        object.__setattr__(self, "cubes", cubes)
        seen = set(cubes)
        if len(seen) != len(cubes):
            raise ValidationError("cube collection lists a cube twice")
        for cube in cubes:
            for level in range(cube.level):
                if cube.ancestor(level) in seen:
                    raise ValidationError(f"cubes {cube.ancestor(level)} and {cube} overlap")

    @classmethod
    def of(cls, cubes: Iterable[DyadicCube]) -> "CubeCollection":
        return cls(tuple(cubes))

    def __iter__(self) -> Iterator[DyadicCube]:
        return iter(self.cubes)

    def __len__(self) -> int:
        return len(self.cubes)

    def __contains__(self, cube) -> bool:
        return cube in self.cubes

    def n_cells(self, grid: DyadicGrid) -> int:
        return sum(2 ** ((grid.depth - c.level) * grid.dim) for c in self.cubes)

    def measure(self, grid: DyadicGrid) -> float:
        """Measure of the union, as (cell count) x (cell measure) so it is exact."""
        return self.n_cells(grid) * grid.cell_measure

    def cell_mask(self, grid: DyadicGrid) -> np.ndarray:
        mask = np.zeros(grid.shape, dtype=bool)
        for cube in self.cubes:
            mask[cube.cell_slices(grid)] = True
        return mask.reshape(-1)

    def to_list(self) -> list[dict]:
        return [c.to_dict() for c in self.cubes]

    @classmethod
    def from_list(cls, items: list[dict]) -> "CubeCollection":
        return cls(tuple(DyadicCube.from_dict(d) for d in items))


@dataclass(frozen=True)
class CZResult:
    lam: float
    t: float
    cubes: CubeCollection

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "t": self.t, "cubes": self.cubes.to_list()}

    @classmethod
    def from_dict(cls, d: dict) -> "CZResult":
        return cls(float(d["lambda"]), float(d["t"]), CubeCollection.from_list(d["cubes"]))


def _children_mask(parent_mask: np.ndarray, dim: int, level: int) -> np.ndarray:
    x = parent_mask.reshape((2**level,) * dim)
    for axis in range(dim):
        x = np.repeat(x, 2, axis=axis)
    return x.reshape(-1)


def cz_decompose(f: StepFunction, t: float, lam: float) -> CZResult:
    """Maximal dyadic cubes on which the ``t``-median of ``|f|`` exceeds ``lam``.

    Descends level by level from the root; only children of cubes not yet
    selected are evaluated, and a cube is selected the first time its median
    exceeds ``lam`` along its ancestor chain.
    """
    check_fraction("t", t)
    lam = float(lam)
    root = float(level_medians(f, 0, t, absolute=True)[0])
    if not lam >= root:
        raise PreconditionError(
            f"lambda={lam!r} is below the root median m^t_|f|(Q0)={root!r} (t={t})"
        )
    selected: list[DyadicCube] = []
    open_ = np.ones(1, dtype=bool)
    per_side = 1
    for level in range(1, f.depth + 1):
        open_ = _children_mask(open_, f.dim, level - 1)
        per_side *= 2
        idx = np.flatnonzero(open_)
        if idx.size == 0:
            break
        med = block_medians(np.abs(f.blocks(level)[idx]), t)
        hit = idx[med > lam]
        open_[hit] = False
        for flat in hit:
            index = np.unravel_index(int(flat), (per_side,) * f.dim)
            selected.append(DyadicCube(level, tuple(int(k) for k in index)))
    return CZResult(lam, float(t), CubeCollection(tuple(selected)))


def level_set(f: StepFunction, t: float, lam: float) -> tuple[CubeCollection, float]:
    """CZ cubes at ``lam`` and the measure of their union, ``|{M^{d,t} f > lam}|``."""
    result = cz_decompose(f, t, lam)
    return result.cubes, result.cubes.measure(f.grid)
