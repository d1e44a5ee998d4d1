"""Dyadic grids, cubes, step functions, the function catalog and file I/O.

A :class:`DyadicGrid` of dimension ``n`` and depth ``J`` splits the root cube
into ``2**(J*n)`` equal cells.  Cells are numbered row-major by their
multi-index, so the values of a :class:`StepFunction` reshape directly into an
``n``-dimensional array of side ``2**J``.  A level-``j`` cube owns the
``2**((J-j)*n)`` cells whose multi-index divided by ``2**(J-j)`` equals the
cube index; :func:`level_blocks` gathers those cells for every cube of a
level at once.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import ResourceError, UnsupportedError, ValidationError

DEFAULT_CELL_BUDGET = 2**24


def cell_budget() -> int:
    """Largest admissible number of finest cells (``JN_CELL_BUDGET`` overrides)."""
    raw = os.environ.get("JN_CELL_BUDGET")
    if raw is None:
        return DEFAULT_CELL_BUDGET
    try:
        budget = int(raw)
    except ValueError:
        raise ValidationError(f"JN_CELL_BUDGET must be an integer, got {raw!r}") from None
    if budget < 1:
        raise ValidationError("JN_CELL_BUDGET must be positive")
    return budget


@dataclass(frozen=True)
class DyadicGrid:
    dim: int
    depth: int
    root_origin: tuple[float, ...]
    root_side: float

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)):
            raise ValidationError(f"dim must be an integer, got {self.dim!r}")
        if self.dim not in (1, 2, 3):
            raise ValidationError(f"dim must be 1, 2 or 3, got {self.dim}")
        if isinstance(self.depth, bool) or not isinstance(self.depth, (int, np.integer)):
            raise ValidationError(f"depth must be an integer, got {self.depth!r}")
        if self.depth < 0:
            raise ValidationError(f"depth must be >= 0, got {self.depth}")
        origin = tuple(float(x) for x in np.atleast_1d(np.asarray(self.root_origin, dtype=float)))
        if len(origin) != self.dim:
            raise ValidationError(f"root_origin has {len(origin)} coordinates, expected {self.dim}")
        if not all(math.isfinite(x) for x in origin):
            raise ValidationError("root_origin must be finite")
        side = float(self.root_side)
        if not (math.isfinite(side) and side > 0):
            raise ValidationError(f"root_side must be a positive finite number, got {self.root_side!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "depth", int(self.depth))
        object.__setattr__(self, "root_origin", origin)
        object.__setattr__(self, "root_side", side)
        budget = cell_budget()
        if self.depth * self.dim > 62 or 2 ** (self.depth * self.dim) > budget:
            raise ResourceError(
                f"grid with dim={self.dim}, depth={self.depth} has 2^{self.depth * self.dim} cells, "
                f"over the cell budget {budget}"
            )

    @property
    def n_cells(self) -> int:
        return 2 ** (self.depth * self.dim)

    @property
    def cells_per_side(self) -> int:
        return 2**self.depth

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.cells_per_side,) * self.dim

    def side(self, level: int) -> float:
        return self.root_side / 2**level

    def measure(self, level: int) -> float:
        """Lebesgue measure of any cube of the given level."""
        return self.side(level) ** self.dim

    @property
    def cell_measure(self) -> float:
        return self.measure(self.depth)

    @property
    def root_measure(self) -> float:
        return self.measure(0)

    def n_cubes(self, level: int) -> int:
        return 2 ** (level * self.dim)

    def cubes(self, level: int) -> Iterator["DyadicCube"]:
        """All cubes of one level, in row-major index order."""
        per_side = 2**level
        for flat in range(self.n_cubes(level)):
            index = np.unravel_index(flat, (per_side,) * self.dim)
            yield DyadicCube(level, tuple(int(k) for k in index))

    def all_cubes(self) -> Iterator["DyadicCube"]:
        for level in range(self.depth + 1):
            yield from self.cubes(level)

    def midpoints(self) -> np.ndarray:
        """Cell midpoints, shape ``(n_cells, dim)``, row-major cell order."""
        h = self.side(self.depth)
        axes = [o + (np.arange(self.cells_per_side) + 0.5) * h for o in self.root_origin]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=1)

    def cell_edges(self) -> np.ndarray:
        """Cell boundaries along each axis, shape ``(dim, 2**depth + 1)``."""
        h = self.side(self.depth)
        return np.stack([o + np.arange(self.cells_per_side + 1) * h for o in self.root_origin])

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "depth": self.depth,
            "root": {"origin": list(self.root_origin), "side": self.root_side},
        }


def make_grid(dim: int, depth: int, root_origin: Sequence[float] | float = 0.0, root_side: float = 1.0) -> DyadicGrid:
    """Build a dyadic grid; a scalar origin is broadcast to every coordinate."""
    origin = np.atleast_1d(np.asarray(root_origin, dtype=float))
    if origin.size == 1 and isinstance(dim, int) and dim > 1:
        origin = np.repeat(origin, dim)
    return DyadicGrid(dim, depth, tuple(origin.tolist()), root_side)


@dataclass(frozen=True, order=True)
class DyadicCube:
    level: int
    index: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "index", tuple(int(k) for k in self.index))

    @property
    def dim(self) -> int:
        return len(self.index)

    def validate(self, grid: DyadicGrid) -> "DyadicCube":
        if self.dim != grid.dim:
            raise ValidationError(f"cube {self} has dimension {self.dim}, grid has {grid.dim}")
        if not 0 <= self.level <= grid.depth:
            raise ValidationError(f"cube level {self.level} outside 0..{grid.depth}")
        per_side = 2**self.level
        if any(not 0 <= k < per_side for k in self.index):
            raise ValidationError(f"cube index {self.index} outside [0, {per_side}) at level {self.level}")
        return self

    def parent(self) -> "DyadicCube":
        if self.level == 0:
            raise ValidationError("the root cube has no parent")
        return DyadicCube(self.level - 1, tuple(k // 2 for k in self.index))

    def children(self) -> list["DyadicCube"]:
        """The ``2**n`` children in row-major order of their offsets."""
        out = []
        for offset in np.ndindex(*(2,) * self.dim):
            out.append(DyadicCube(self.level + 1, tuple(2 * k + e for k, e in zip(self.index, offset))))
        return out

    def ancestor(self, level: int) -> "DyadicCube":
        if not 0 <= level <= self.level:
            raise ValidationError(f"no ancestor of {self} at level {level}")
        shift = self.level - level
        return DyadicCube(level, tuple(k >> shift for k in self.index))

    def contains(self, other: "DyadicCube") -> bool:
        """True when ``other`` is this cube or one of its descendants."""
        return other.level >= self.level and other.ancestor(self.level) == self

    def flat_index(self) -> int:
        return int(np.ravel_multi_index(self.index, (2**self.level,) * self.dim)) if self.dim else 0

    def measure(self, grid: DyadicGrid) -> float:
        return grid.measure(self.level)

    def cell_slices(self, grid: DyadicGrid) -> tuple[slice, ...]:
        """Slices selecting the cube's cells in the ``grid.shape`` array."""
        b = 2 ** (grid.depth - self.level)
        return tuple(slice(k * b, (k + 1) * b) for k in self.index)

    def cells(self, grid: DyadicGrid) -> np.ndarray:
        """Flat (row-major) indices of the finest cells inside the cube."""
        flat = np.arange(grid.n_cells).reshape(grid.shape)
        return flat[self.cell_slices(grid)].reshape(-1)

    def to_dict(self) -> dict:
        return {"level": self.level, "index": list(self.index)}

    @classmethod
    def from_dict(cls, d: dict) -> "DyadicCube":
        return cls(int(d["level"]), tuple(int(k) for k in d["index"]))


def level_blocks(values: np.ndarray, dim: int, depth: int, level: int) -> np.ndarray:
    """Regroup row-major cell values into one row per level-``level`` cube.

    Returns an array of shape ``(2**(level*dim), 2**((depth-level)*dim))``;
    row ``r`` holds the cells of the cube with row-major flat index ``r``.
    """
    g = 2**level
    b = 2 ** (depth - level)
    shape: list[int] = []
    for _ in range(dim):
        shape += [g, b]
    x = np.asarray(values).reshape(shape)
    perm = list(range(0, 2 * dim, 2)) + list(range(1, 2 * dim, 2))
    return x.transpose(perm).reshape(g**dim, b**dim)


def upsample(level_values: np.ndarray, dim: int, level: int, depth: int) -> np.ndarray:
    """Broadcast one value per level-``level`` cube onto the finest cells (flat, row-major)."""
    x = np.asarray(level_values).reshape((2**level,) * dim)
    b = 2 ** (depth - level)
    for axis in range(dim):
        x = np.repeat(x, b, axis=axis)
    return x.reshape(-1)


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Finite values on the finest cells of a grid; read-only after construction."""

    grid: DyadicGrid
    values: np.ndarray

    def __post_init__(self):
        try:
            values = np.array(self.values, dtype=np.float64).reshape(-1)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"values are not numeric: {exc}") from None
        if values.size != self.grid.n_cells:
            raise ValidationError(
                f"values has length {values.size}, expected 2^({self.grid.depth}*{self.grid.dim}) = {self.grid.n_cells}"
            )
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise ValidationError(f"non-finite value {values[bad[0]]!r} at cell index {int(bad[0])}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.grid.dim

    @property
    def depth(self) -> int:
        return self.grid.depth

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def with_values(self, values) -> "StepFunction":
        return StepFunction(self.grid, values)

    def abs(self) -> "StepFunction":
        return StepFunction(self.grid, np.abs(self.values))

    def blocks(self, level: int) -> np.ndarray:
        return level_blocks(self.values, self.dim, self.depth, level)

    def cube_values(self, cube: DyadicCube) -> np.ndarray:
        cube.validate(self.grid)
        return self.as_array()[cube.cell_slices(self.grid)].reshape(-1)

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.cell_measure)

    def cube_mean(self, cube: DyadicCube) -> float:
        return float(np.mean(self.cube_values(cube)))

    def equals(self, other: "StepFunction") -> bool:
        """Bit-exact equality of grid and values."""
        return self.grid == other.grid and np.array_equal(
            self.values.view(np.uint64), other.values.view(np.uint64)
        )

    def to_dict(self) -> dict:
        d = self.grid.to_dict()
        d["values"] = [float(v) for v in self.values]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "StepFunction":
        if not isinstance(d, dict):
            raise ValidationError("step function document must be a JSON object")
        missing = [k for k in ("dim", "depth", "root", "values") if k not in d]
        if missing:
            raise ValidationError(f"missing keys: {', '.join(missing)}")
        root = d["root"]
        if not isinstance(root, dict) or "origin" not in root or "side" not in root:
            raise ValidationError("root must be an object with 'origin' and 'side'")
        grid = DyadicGrid(d["dim"], d["depth"], tuple(np.atleast_1d(root["origin"])), root["side"])
        values = d["values"]
        if not isinstance(values, list):
            raise ValidationError("values must be a list")
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValidationError(f"non-numeric value {v!r} at cell index {i}")
        return cls(grid, values)


# ---------------------------------------------------------------------------
# function catalog

@dataclass(frozen=True)
class FunctionSpec:
    """A catalog entry name, its parameters, an optional domain and a sampling rule.

    ``domain`` is ``(origin, side)``; ``None`` means "the entry's default
    domain" for singular entries and "whatever grid is supplied" otherwise.
    """

    name: str
    params: dict = field(default_factory=dict)
    domain: tuple[tuple[float, ...], float] | None = None
    sampling_rule: str = "midpoint"

    def __post_init__(self):
        if self.name not in CATALOG:
            raise ValidationError(f"unknown catalog function {self.name!r}; known: {', '.join(sorted(CATALOG))}")
        if self.sampling_rule not in ("midpoint", "exact-cell-average"):
            raise ValidationError(f"unknown sampling rule {self.sampling_rule!r}")
        if self.domain is not None:
            origin, side = self.domain
            object.__setattr__(
                self, "domain", (tuple(float(x) for x in np.atleast_1d(origin)), float(side))
            )

    def default_domain(self, dim: int) -> tuple[tuple[float, ...], float] | None:
        if self.domain is not None:
            return self.domain
        entry = CATALOG[self.name]
        if entry.default_domain is None:
            return None
        origin, side = entry.default_domain
        return (origin,) * dim, side

    def to_dict(self) -> dict:
        d = {"name": self.name, "params": dict(self.params), "sampling_rule": self.sampling_rule}
        if self.domain is not None:
            d["domain"] = {"origin": list(self.domain[0]), "side": self.domain[1]}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSpec":
        domain = d.get("domain")
        if domain is not None:
            domain = (tuple(domain["origin"]), domain["side"])
        return cls(d["name"], dict(d.get("params", {})), domain, d.get("sampling_rule", "midpoint"))


@dataclass(frozen=True)
class _Entry:
    pointwise: Callable[[np.ndarray, dict, DyadicGrid], np.ndarray]
    antiderivative: Callable[[np.ndarray, dict], np.ndarray] | None = None
    one_dimensional: bool = False
    default_domain: tuple[float, float] | None = None
    check_domain: Callable[[float, float, dict], None] | None = None


def _first_coord(x: np.ndarray) -> np.ndarray:
    return x[:, 0]


def _constant(x, params, grid):
    return np.full(x.shape[0], float(params.get("c", 0.0)))


def _step(x, params, grid):
    values = np.asarray(params.get("values", []), dtype=float).reshape(-1)
    if values.size != grid.n_cells:
        raise ValidationError(f"step needs {grid.n_cells} values, got {values.size}")
    return values


def _random_uniform(x, params, grid):
    lo = float(params.get("lo", 0.0))
    hi = float(params.get("hi", 1.0))
    if not lo <= hi:
        raise ValidationError(f"random-uniform needs lo <= hi, got lo={lo}, hi={hi}")
    rng = np.random.default_rng(int(params.get("seed", 0)))
    return rng.uniform(lo, hi, size=grid.n_cells)


def _log_reciprocal(x, params, grid):
    return -np.log(_first_coord(x))


def _log_reciprocal_F(x, params):
    # antiderivative of -log x, continuous at 0 with value 0
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] - x[pos] * np.log(x[pos])
    return out


def _power(x, params, grid):
    return _first_coord(x) ** float(params.get("a", 1.0))


def _power_F(x, params):
    a = float(params.get("a", 1.0))
    if a == -1.0:
        return np.log(x)
    return x ** (a + 1.0) / (a + 1.0)


def _jn_extremal(x, params, grid):
    t = _first_coord(x)
    out = np.zeros_like(t)
    inside = (t > 0) & (t < 0.5)
    out[inside] = 1.0 / (t[inside] * np.log(t[inside]) ** 2)
    return out


def _jn_extremal_F(x, params):
    # -1/log x is an antiderivative on (0, 1/2); the function vanishes beyond 1/2
    t = np.clip(x, 0.0, 0.5)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = -1.0 / np.log(t[pos])
    return out


def _smooth_lipschitz(x, params, grid):
    amplitude = float(params.get("amplitude", 1.0))
    frequency = float(params.get("frequency", 1.0))
    return amplitude * np.sin(2 * np.pi * frequency * x.sum(axis=1))


def _check_log_reciprocal(lo, hi, params):
    if lo < 0 or hi > 1:
        raise ValidationError(f"log-reciprocal lives on (0, 1); domain [{lo}, {hi}] leaves it")


def _check_power(lo, hi, params):
    a = float(params.get("a", 1.0))
    if lo < 0 and (a < 0 or a != int(a)):
        raise ValidationError(f"power with exponent {a} needs a domain inside [0, inf)")


def _check_jn_extremal(lo, hi, params):
    if lo < 0 or hi >= 1:
        raise ValidationError(f"jn-extremal needs a domain inside (0, 1); got [{lo}, {hi}]")


CATALOG: dict[str, _Entry] = {
    "constant": _Entry(_constant),
    "step": _Entry(_step),
    "random-uniform": _Entry(_random_uniform),
    "log-reciprocal": _Entry(_log_reciprocal, _log_reciprocal_F, True, (0.0, 1.0), _check_log_reciprocal),
    "power": _Entry(_power, _power_F, True, (0.0, 1.0), _check_power),
    "jn-extremal": _Entry(_jn_extremal, _jn_extremal_F, True, (0.0, 0.125), _check_jn_extremal),
    "smooth-lipschitz": _Entry(_smooth_lipschitz),
}


def lipschitz_constant(spec: FunctionSpec, dim: int) -> float:
    """Euclidean Lipschitz constant of a ``smooth-lipschitz`` entry."""
    if spec.name != "smooth-lipschitz":
        raise UnsupportedError(f"no Lipschitz constant cataloged for {spec.name!r}")
    amplitude = abs(float(spec.params.get("amplitude", 1.0)))
    frequency = abs(float(spec.params.get("frequency", 1.0)))
    return 2 * math.pi * amplitude * frequency * math.sqrt(dim)


def grid_for(spec: FunctionSpec, dim: int, depth: int) -> DyadicGrid:
    """A grid on the entry's domain (its default one for singular entries, else the unit cube)."""
    domain = spec.default_domain(dim)
    if domain is None:
        return make_grid(dim, depth, 0.0, 1.0)
    return make_grid(dim, depth, domain[0], domain[1])


def sample_catalog(spec: FunctionSpec, grid: DyadicGrid) -> StepFunction:
    entry = CATALOG[spec.name]
    domain = spec.default_domain(grid.dim)
    if domain is not None and spec.domain is not None:
        origin, side = domain
        if tuple(origin) != grid.root_origin or side != grid.root_side:
            raise ValidationError(
                f"function domain origin={list(origin)}, side={side} does not match grid root "
                f"origin={list(grid.root_origin)}, side={grid.root_side}"
            )
    if entry.one_dimensional and grid.dim != 1:
        raise UnsupportedError(f"{spec.name} is only cataloged in one dimension")
    lo = grid.root_origin[0]
    hi = lo + grid.root_side
    if entry.check_domain is not None:
        entry.check_domain(lo, hi, spec.params)

    if spec.sampling_rule == "midpoint":
        values = entry.pointwise(grid.midpoints(), spec.params, grid)
    else:
        if entry.antiderivative is None:
            raise UnsupportedError(f"no closed-form antiderivative cataloged for {spec.name!r}")
        if spec.name == "power" and lo == 0 and float(spec.params.get("a", 1.0)) <= -1:
            raise ValidationError("power with exponent <= -1 is not integrable at 0")
        edges = grid.cell_edges()[0]
        F = entry.antiderivative(edges, spec.params)
        values = np.diff(F) / np.diff(edges)
    return StepFunction(grid, values)


def sample(spec: FunctionSpec, dim: int, depth: int) -> StepFunction:
    return sample_catalog(spec, grid_for(spec, dim, depth))


# ---------------------------------------------------------------------------
# file I/O

def dumps_json(f: StepFunction) -> str:
    return json.dumps(f.to_dict(), allow_nan=False)


def loads_json(text: str) -> StepFunction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    return StepFunction.from_dict(doc)


_CSV_HEADER = ("dim", "depth", "origin", "side")


def dumps_csv(f: StepFunction) -> str:
    if f.dim != 1:
        raise UnsupportedError("CSV format is only defined for dim = 1")
    lines = [
        f"dim,{f.dim}",
        f"depth,{f.depth}",
        f"origin,{f.grid.root_origin[0]!r}",
        f"side,{f.grid.root_side!r}",
    ]
    lines += [repr(float(v)) for v in f.values]
    return "\n".join(lines) + "\n"


def loads_csv(text: str) -> StepFunction:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 4:
        raise ValidationError("CSV needs a 4-line header: dim, depth, origin, side")
    header = {}
    for expected, row in zip(_CSV_HEADER, rows[:4]):
        if len(row) != 2 or row[0].strip() != expected:
            raise ValidationError(f"CSV header line must be '{expected},<value>', got {','.join(row)!r}")
        header[expected] = row[1].strip()
    try:
        dim = int(header["dim"])
        depth = int(header["depth"])
        origin = float(header["origin"])
        side = float(header["side"])
    except ValueError as exc:
        raise ValidationError(f"bad CSV header value: {exc}") from None
    if dim != 1:
        raise ValidationError("CSV format is only defined for dim = 1")
    values = []
    for i, row in enumerate(rows[4:]):
        try:
            values.append(float(row[0]))
        except ValueError:
            raise ValidationError(f"non-numeric value {row[0]!r} at cell index {i}") from None
    return StepFunction(DyadicGrid(dim, depth, (origin,), side), values)


def save(f: StepFunction, path: str | os.PathLike, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    text = dumps_csv(f) if fmt == "csv" else dumps_json(f)
    path.write_text(text)


def load(path: str | os.PathLike, fmt: str | None = None) -> StepFunction:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"input file not found: {path}")
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    text = path.read_text()
    return loads_csv(text) if fmt == "csv" else loads_json(text)


def io_roundtrip(f: StepFunction, path: str | os.PathLike) -> StepFunction:
    """Store then reload; the result is bit-identical to ``f``."""
    save(f, path)
    return load(path)
