import math

import numpy as np
import pytest
from scipy import integrate

from dyadic_jn import DyadicCube, FunctionSpec, StepFunction, make_grid, sample, sample_catalog
from dyadic_jn.errors import ResourceError, UnsupportedError, ValidationError
from dyadic_jn.grid import io_roundtrip, level_blocks, load, loads_csv, dumps_csv, upsample


@pytest.mark.parametrize(
    "dim,depth,cells,measure",
    [(1, 0, 1, 1.0), (1, 3, 8, 1 / 8), (2, 2, 16, 1 / 16)],
)
def test_make_grid_cell_counts(dim, depth, cells, measure):
    g = make_grid(dim, depth, [0.0] * dim, 1.0)
    assert g.n_cells == cells
    assert g.cell_measure == measure


def test_make_grid_rejects_bad_side_and_budget(monkeypatch):
    with pytest.raises(ValidationError):
        make_grid(1, 2, 0.0, 0.0)
    with pytest.raises(ValidationError):
        make_grid(1, 2, 0.0, -1.0)
    monkeypatch.setenv("JN_CELL_BUDGET", "64")
    make_grid(1, 6)
    with pytest.raises(ResourceError):
        make_grid(1, 7)
    with pytest.raises(ResourceError):
        make_grid(2, 4)


def test_cube_tree_navigation():
    q = DyadicCube(2, (3, 1))
    assert q.parent() == DyadicCube(1, (1, 0))
    assert q.ancestor(0) == DyadicCube(0, (0, 0))
    kids = q.children()
    assert len(kids) == 4 and all(k.parent() == q for k in kids)
    assert q.contains(kids[2]) and not kids[2].contains(q)
    with pytest.raises(ValidationError):
        DyadicCube(1, (2,)).validate(make_grid(1, 3))


def test_level_blocks_match_cube_values():
    rng = np.random.default_rng(3)
    g = make_grid(2, 3)
    f = StepFunction(g, rng.normal(size=g.n_cells))
    for level in range(4):
        blocks = level_blocks(f.values, 2, 3, level)
        for Q in g.cubes(level):
            assert sorted(blocks[Q.flat_index()]) == sorted(f.cube_values(Q))
        up = upsample(blocks.mean(axis=1), 2, level, 3)
        for Q in g.cubes(level):
            assert np.all(up.reshape(g.shape)[Q.cell_slices(g)] == f.cube_mean(Q))


def test_constant_sample():
    f = sample(FunctionSpec("constant", {"c": 3}), 2, 2)
    assert np.all(f.values == 3)


def test_jn_extremal_midpoints():
    f = sample(FunctionSpec("jn-extremal"), 1, 3)
    xs = np.arange(1, 16, 2) / 128
    expected = 1 / (xs * np.log(xs) ** 2)
    assert np.allclose(f.values, expected, rtol=1e-15, atol=0)
    assert f.grid.root_side == 0.125


def test_power_exact_cell_average_matches_quadrature():
    f = sample(FunctionSpec("power", {"a": -0.5}, sampling_rule="exact-cell-average"), 1, 2)
    edges = np.linspace(0, 1, 5)
    closed = [2 * (math.sqrt(b) - math.sqrt(a)) / (b - a) for a, b in zip(edges[:-1], edges[1:])]
    quad = [integrate.quad(lambda x: x**-0.5, a, b)[0] / (b - a) for a, b in zip(edges[:-1], edges[1:])]
    assert np.allclose(f.values, closed, rtol=1e-14)
    assert np.allclose(closed, quad, rtol=1e-8)


def test_catalog_errors():
    with pytest.raises(ValidationError):
        FunctionSpec("no-such-function")
    with pytest.raises(UnsupportedError):
        sample(FunctionSpec("smooth-lipschitz", sampling_rule="exact-cell-average"), 1, 3)
    with pytest.raises(UnsupportedError):
        sample(FunctionSpec("log-reciprocal"), 2, 2)


def test_roundtrip_json_and_csv(tmp_path):
    f = sample(FunctionSpec("random-uniform", {"lo": -1, "hi": 1, "seed": 9}), 1, 5)
    assert io_roundtrip(f, tmp_path / "f.json").equals(f)
    assert io_roundtrip(f, tmp_path / "f.csv").equals(f)
    g = sample(FunctionSpec("random-uniform", {"seed": 2}), 2, 3)
    assert io_roundtrip(g, tmp_path / "g.json").equals(g)


def test_length_mismatch_and_nan_rejected(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1, "depth": 3, "root": {"origin": [0], "side": 1}, "values": [0,1,2,3,4,5,6]}')
    with pytest.raises(ValidationError, match="8"):
        load(p)
    p.write_text('{"dim": 1, "depth": 2, "root": {"origin": [0], "side": 1}, "values": [0, 1, NaN, 3]}')
    with pytest.raises(ValidationError, match="2"):
        load(p)
    with pytest.raises(ValidationError):
        load(tmp_path / "missing.json")
    with pytest.raises(ValidationError):
        loads_csv("dim,1\ndepth,1\norigin,0\nside,1\n0\nnan\n")


def test_csv_header_layout():
    f = StepFunction(make_grid(1, 1), [1.5, -2.0])
    assert dumps_csv(f).splitlines()[:4] == ["dim,1", "depth,1", "origin,0.0", "side,1.0"]


def test_step_function_is_read_only():
    f = StepFunction(make_grid(1, 1), [1.0, 2.0])
    with pytest.raises(ValueError):
        f.values[0] = 5.0
