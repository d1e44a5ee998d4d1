from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic_jn import DyadicCube, StepFunction, make_grid, maximal_median, median_oscillation, min_center_oscillation
from dyadic_jn.corpus import random_step
from dyadic_jn.errors import ValidationError
from dyadic_jn.median import median_of, rank_for

from oracles import cgrid_min_center, scan_median

ROOT = DyadicCube(0, (0,))


def fn(values):
    n = len(values)
    return StepFunction(make_grid(1, n.bit_length() - 1), values)


@pytest.mark.parametrize("s,expected", [(0.5, 3.0), (0.25, 4.0), (1.0, 1.0)])
def test_small_medians(s, expected):
    assert maximal_median(fn([1, 2, 3, 4]), ROOT, s) == expected


@pytest.mark.parametrize("s,expected", [(0.5, 1.0), (0.6, 0.0)])
def test_half_indicator(s, expected):
    f = fn([0, 1, 1, 0, 0, 1, 0, 1])
    assert maximal_median(f, ROOT, s) == expected == scan_median(f.values, s)


def test_constant_gives_constant():
    f = fn([2.5] * 8)
    for s in (1 / 16, 0.3, 1.0):
        assert maximal_median(f, ROOT, s) == 2.5
    assert median_oscillation(f, ROOT, 0.25, 0.5) == 0.0
    assert min_center_oscillation(f, ROOT, 0.5) == (0.0, 2.5)


def test_decimal_fractions_use_intended_rank():
    assert rank_for(0.1, 10) == 1
    assert rank_for(0.7, 10) == 7
    v = np.arange(10.0)
    assert median_of(v, 0.1) == 9.0 == scan_median(v, Fraction(1, 10))


def test_min_center_examples():
    assert min_center_oscillation(fn([0, 1]), ROOT, 0.5) == (0.5, 0.5)
    assert min_center_oscillation(fn([0, 0, 0, 10]), ROOT, 0.25) == (5.0, 5.0)
    assert min_center_oscillation(fn([0, 0, 0, 10]), ROOT, 0.5) == (0.0, 0.0)


def test_min_center_leftmost_on_tie():
    # q = 3: windows [0, 5] and [1, 6] both have width 5
    assert min_center_oscillation(fn([0, 1, 5, 6]), ROOT, 0.5) == (2.5, 2.5)


def test_parameter_ranges():
    f = fn([0, 1])
    for bad in (0.0, -0.1, 1.5, float("nan")):
        with pytest.raises(ValidationError):
            maximal_median(f, ROOT, bad)
    with pytest.raises(ValidationError):
        min_center_oscillation(f, ROOT, 0.75)
    with pytest.raises(ValidationError):
        median_oscillation(f, ROOT, 0.5, 0.25)


values_lists = st.lists(
    st.one_of(st.integers(-4, 4).map(float), st.floats(-1e6, 1e6, allow_nan=False)),
    min_size=1,
    max_size=32,
)
fractions = st.sampled_from([1 / 16, 1 / 8, 0.1, 1 / 4, 1 / 3, 0.5, 0.6, 0.7, 3 / 4, 1.0])


@given(values_lists, fractions)
def test_order_statistic_matches_scan(values, s):
    assert median_of(values, s) == scan_median(values, s)


@given(st.lists(st.integers(-5, 5).map(float), min_size=1, max_size=12), st.sampled_from([1 / 8, 1 / 4, 1 / 3, 0.5]))
@settings(max_examples=150)
def test_min_center_matches_c_grid(values, s):
    got = _min_center(values, s)
    want = cgrid_min_center(values, s)
    assert got[0] == want[0]
    assert scan_median([abs(x - got[1]) for x in values], s) == want[0]


def _min_center(values, s):
    from dyadic_jn.median import block_min_center

    v, c = block_min_center(np.asarray(values, dtype=float)[None, :], s)
    return float(v[0]), float(c[0])


@pytest.mark.parametrize("dim,depth", [(1, 6), (2, 3)])
def test_maximal_median_matches_oracle_on_random_functions(dim, depth):
    for seed in range(40):
        f = random_step(seed, dim, depth)
        rng = np.random.default_rng(seed)
        for s in (1 / 16, 1 / 4, 1 / 2, 1.0):
            level = int(rng.integers(0, depth + 1))
            Q = DyadicCube(level, tuple(int(k) for k in rng.integers(0, 2**level, dim)))
            assert maximal_median(f, Q, s) == scan_median(f.cube_values(Q), s)


@given(values_lists, fractions, fractions)
def test_monotone_in_s(values, s, s2):
    s, s2 = sorted((s, s2))
    assert median_of(values, s2) <= median_of(values, s)


@given(values_lists, fractions, st.floats(0.01, 100), st.floats(-100, 100))
def test_affine_and_shift(values, s, a, b):
    v = np.asarray(values)
    m = median_of(v, s)
    assert median_of(a * v + b, s) == float(a * m + b) or abs(median_of(a * v + b, s) - (a * m + b)) <= 1e-9 * (1 + abs(a * m + b))
