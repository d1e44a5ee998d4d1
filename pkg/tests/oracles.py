"""Slow, literal reference implementations used only by the tests.

None of these share code paths with the package beyond the grid indexing
helpers on DyadicCube.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def scan_median(values, s) -> float:
    """Infimum of thresholds a with #{v > a} < s*m, scanning candidate values.

    The set of admissible a is a closed-left ray starting at some value of
    the data (counts only change at data values), so the infimum is the
    smallest data value that is admissible.
    """
    vals = [float(v) for v in values]
    m = len(vals)
    s = Fraction(s).limit_denominator(10**12) if not isinstance(s, Fraction) else s
    ok = [a for a in sorted(set(vals)) if sum(1 for v in vals if v > a) < s * m]
    return min(ok)


def cube_values(values, dim, depth, level, index):
    """Cell values inside the cube, by testing every cell's ancestor directly."""
    arr = np.asarray(values, dtype=float).reshape((2**depth,) * dim)
    shift = depth - level
    out = []
    for cell in itertools.product(range(2**depth), repeat=dim):
        if all((c >> shift) == k for c, k in zip(cell, index)):
            out.append(arr[cell])
    return out


def all_cubes(dim, depth):
    for level in range(depth + 1):
        for index in itertools.product(range(2**level), repeat=dim):
            yield level, index


def cgrid_min_center(values, s):
    """min over candidate centres c of m^s(|f - c|); candidates are values and pairwise midpoints."""
    vals = sorted(set(float(v) for v in values))
    cands = set(vals)
    for a, b in itertools.combinations(vals, 2):
        cands.add((a + b) / 2)
    best = None
    for c in sorted(cands):
        v = scan_median([abs(x - c) for x in values], s)
        if best is None or v < best[0]:
            best = (v, c)
    return best


def maximal_by_ancestors(values, dim, depth, stat):
    """For each cell, max of stat(cube values) over every cube that contains it."""
    arr = np.asarray(values, dtype=float).reshape((2**depth,) * dim)
    out = np.empty_like(arr)
    for cell in itertools.product(range(2**depth), repeat=dim):
        best = -math.inf
        for level in range(depth + 1):
            index = tuple(c >> (depth - level) for c in cell)
            best = max(best, stat(cube_values(values, dim, depth, level, index)))
        out[cell] = best
    return out.reshape(-1)


def cz_by_definition(values, dim, depth, t, lam):
    """Cubes whose t-median of |f| exceeds lam while no strict ancestor's does."""
    absval = np.abs(np.asarray(values, dtype=float))

    def big(level, index):
        return scan_median(cube_values(absval, dim, depth, level, index), t) > lam

    out = []
    for level, index in all_cubes(dim, depth):
        if level == 0 or not big(level, index):
            continue
        if not any(big(a, tuple(k >> (level - a) for k in index)) for a in range(level)):
            out.append((level, index))
    return sorted(out)


def antichains(dim, depth):
    """Every antichain of the full dyadic tree of levels 0..depth, cells included."""
    cubes = list(all_cubes(dim, depth))

    def related(a, b):
        (la, ia), (lb, ib) = a, b
        if la > lb:
            (la, ia), (lb, ib) = (lb, ib), (la, ia)
        return all((k >> (lb - la)) == j for j, k in zip(ia, ib))

    def extend(start, chosen):
        yield list(chosen)
        for i in range(start, len(cubes)):
            if all(not related(cubes[i], c) for c in chosen):
                chosen.append(cubes[i])
                yield from extend(i + 1, chosen)
                chosen.pop()

    yield from extend(0, [])


def seminorm_by_enumeration(values, dim, depth, p, osc):
    """max over antichains of sum |Q| osc(Q)^p, weights recomputed from scratch."""
    weights = {}
    for level, index in all_cubes(dim, depth):
        weights[(level, index)] = 2.0 ** (-level * dim) * osc(cube_values(values, dim, depth, level, index)) ** p
    return max(sum(weights[c] for c in ac) for ac in antichains(dim, depth))


def mean_deviation(vals):
    v = np.asarray(vals, dtype=float)
    return float(np.abs(v - v.mean()).mean())


def scan_median_np(values, s) -> float:
    """Vectorised form of :func:`scan_median` for the bulk acceptance run."""
    v = np.asarray(values, dtype=float).reshape(-1)
    cand = np.unique(v)
    above = (v[None, :] > cand[:, None]).sum(axis=1)
    fr = Fraction(s).limit_denominator(10**12)
    ok = above * fr.denominator < fr.numerator * v.size
    return float(cand[np.argmax(ok)])
