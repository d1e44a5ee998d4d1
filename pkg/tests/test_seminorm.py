import math

import numpy as np
import pytest

from dyadic_jn import (
    DyadicCube,
    SeminormConfig,
    StepFunction,
    companion_norms,
    cube_weight,
    jn_seminorm,
    jn_seminorm_bruteforce,
    make_grid,
)
from dyadic_jn.corpus import random_step
from dyadic_jn.errors import ResourceError, ValidationError
from dyadic_jn.median import block_median_oscillation, block_min_center
from dyadic_jn.seminorm import antichain_count

from oracles import antichains, cgrid_min_center, mean_deviation, seminorm_by_enumeration

ROOT = DyadicCube(0, (0,))
AVG = SeminormConfig(2.0)
CONFIGS = [AVG, SeminormConfig(2.0, "med-optimal", s=0.25), SeminormConfig(2.0, "med-center", s=0.25, t=0.5)]


def fn(values, dim=1):
    n = len(values)
    return StepFunction(make_grid(dim, (n.bit_length() - 1) // dim), values)


def test_weights_of_two_cell_function():
    f = fn([0, 1])
    assert cube_weight(f, ROOT, AVG) == 0.25
    assert cube_weight(f, ROOT, SeminormConfig(2, "med-optimal", s=0.5)) == 0.25


@pytest.mark.parametrize("cfg", CONFIGS)
def test_constant_gives_zero_and_empty_optimum(cfg):
    rep = jn_seminorm(fn([1.5] * 8), cfg)
    assert rep.value == 0.0 and len(rep.optimum) == 0
    assert jn_seminorm_bruteforce(fn([1.5] * 8), cfg).value == 0.0


def test_root_is_optimal_for_two_cells():
    rep = jn_seminorm(fn([0, 1]), AVG)
    assert rep.value == 0.5
    assert list(rep.optimum) == [ROOT]
    assert jn_seminorm_bruteforce(fn([0, 1]), AVG).value == 0.5


def test_tie_prefers_children():
    rep = jn_seminorm(fn([0, 1, 0, 1]), AVG)
    assert rep.value == 0.5 and rep.value_p == 0.25
    assert list(rep.optimum) == [DyadicCube(1, (0,)), DyadicCube(1, (1,))]
    assert [w for _, w in rep.per_cube_weights] == [0.125, 0.125]
    assert seminorm_by_enumeration([0, 1, 0, 1], 1, 2, 2.0, mean_deviation) == 0.25


def test_config_validation():
    with pytest.raises(ValidationError):
        SeminormConfig(1.0)
    with pytest.raises(ValidationError):
        SeminormConfig(2.0, "med-optimal")
    with pytest.raises(ValidationError):
        SeminormConfig(2.0, "med-center", s=0.5, t=0.25)
    with pytest.raises(ValidationError):
        SeminormConfig(2.0, "avg-mean", s=0.25)
    with pytest.raises(ValidationError):
        SeminormConfig(2.0, "bogus")


def test_antichain_counts():
    # cells excluded: a leaf contributes nothing
    assert antichain_count(1, 1) == 2
    assert antichain_count(1, 2) == 5
    assert antichain_count(1, 4) == 677
    assert antichain_count(2, 2) == 17
    assert sum(1 for _ in antichains(1, 1)) == 5  # with the two cells: {}, Q0, L, R, {L, R}
    with pytest.raises(ResourceError):
        jn_seminorm_bruteforce(random_step(0, 1, 5), AVG)


@pytest.mark.parametrize("cfg", CONFIGS)
@pytest.mark.parametrize("dim,depth", [(1, 3), (2, 1)])
def test_dp_matches_enumeration_oracle(cfg, dim, depth):
    if cfg.mode == "avg-mean":
        osc = mean_deviation
    elif cfg.mode == "med-optimal":
        osc = lambda v: cgrid_min_center(v, cfg.s)[0]
    else:
        osc = lambda v: float(block_median_oscillation(np.asarray(v, dtype=float)[None, :], cfg.s, cfg.t)[0])
    for seed in range(6):
        f = random_step(seed, dim, depth)
        want = seminorm_by_enumeration(f.values, dim, depth, cfg.p, osc)
        got = jn_seminorm(f, cfg).value_p
        assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("cfg", CONFIGS)
def test_dp_equals_bruteforce_bitwise(cfg):
    for seed in range(30):
        for dim, depth in ((1, 4), (2, 2)):
            f = random_step(seed, dim, depth)
            a, b = jn_seminorm(f, cfg), jn_seminorm_bruteforce(f, cfg)
            assert a.value_p == b.value_p


def test_optimum_is_antichain_and_sums_to_value():
    for seed in range(10):
        f = random_step(seed, 1, 6)
        rep = jn_seminorm(f, AVG)
        assert math.fsum(w for _, w in rep.per_cube_weights) == pytest.approx(rep.value_p, rel=1e-12)


def test_value_dominates_every_single_cube():
    f = random_step(5, 1, 5)
    for cfg in CONFIGS:
        rep = jn_seminorm(f, cfg)
        for Q in f.grid.all_cubes():
            assert rep.value_p >= cube_weight(f, Q, cfg) * (1 - 1e-12)


def test_scaling_and_triangle():
    f, g = random_step(1, 1, 5), random_step(2, 1, 5)
    for cfg in CONFIGS[:2]:
        base = jn_seminorm(f, cfg).value
        assert jn_seminorm(f.with_values(-3 * f.values), cfg).value == pytest.approx(3 * base, rel=1e-12)
    fg = f.with_values(f.values + g.values)
    assert jn_seminorm(fg, AVG).value <= jn_seminorm(f, AVG).value + jn_seminorm(g, AVG).value + 1e-12


def test_min_center_mode_uses_exact_minimizer():
    v = np.array([[0.0, 0.0, 1.0, 7.0]])
    assert block_min_center(v, 0.5)[0][0] == cgrid_min_center(v[0], 0.5)[0]


def test_companion_norms():
    n = companion_norms(fn([3.0, 3.0]))
    assert n.l1 == 3.0 and n.bmo == 0.0
    n = companion_norms(fn([0.0, 1.0]))
    assert n.l1 == 0.5 and n.lp == math.sqrt(0.5) and n.bmo == 0.5
    assert companion_norms(fn([0, 0, 0, 2.0])).weak_lp == 1.0
    assert companion_norms(fn([0, 0, 0, math.e])).llogl == pytest.approx(math.e / 4)


def test_report_json_canonical_order():
    d = jn_seminorm(fn([0, 1, 0, 1]), AVG).to_dict()
    assert [c["index"] for c in d["optimum"]] == [[0], [1]]
    assert d["config"] == {"p": 2.0, "mode": "avg-mean", "s": None, "t": None}
