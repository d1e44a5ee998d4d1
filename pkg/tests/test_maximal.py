import numpy as np
import pytest

from dyadic_jn import StepFunction, make_grid, maximal_avg, median_maximal_function
from dyadic_jn.corpus import random_step

from oracles import maximal_by_ancestors, scan_median


def fn(values):
    return StepFunction(make_grid(1, len(values).bit_length() - 1), values)


def test_constant_is_fixed_point():
    f = fn([3.0] * 8)
    assert np.all(maximal_avg(f).values == 3.0)
    assert np.all(median_maximal_function(f, 0.5).values == 3.0)


def test_small_examples():
    assert list(maximal_avg(fn([0, 1])).values) == [0.5, 1.0]
    assert list(maximal_avg(fn([0, 0, 0, 4])).values) == [1.0, 1.0, 2.0, 4.0]
    assert list(median_maximal_function(fn([0, 0, 0, 8]), 0.5).values) == [0, 0, 8, 8]
    assert list(median_maximal_function(fn([2, 6]), 1.0).values) == [2, 6]


def test_uses_absolute_values():
    assert list(maximal_avg(fn([-2, 0])).values) == [2.0, 1.0]


@pytest.mark.parametrize("dim,depth", [(1, 4), (2, 2)])
def test_against_ancestor_enumeration(dim, depth):
    for seed in range(15):
        f = random_step(seed, dim, depth)
        want = maximal_by_ancestors(f.values, dim, depth, lambda v: float(np.mean(np.abs(v))))
        assert np.allclose(maximal_avg(f).values, want, rtol=1e-13, atol=0)
        for t in (1 / 4, 1 / 2, 1.0):
            want = maximal_by_ancestors(f.values, dim, depth, lambda v: scan_median(np.abs(v), t))
            assert np.array_equal(median_maximal_function(f, t).values, want)


def test_dominates_absolute_value():
    f = random_step(4, 1, 6)
    assert np.all(maximal_avg(f).values >= np.abs(f.values) * (1 - 1e-15))
