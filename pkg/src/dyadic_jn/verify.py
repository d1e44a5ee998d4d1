"""Numerical checks of the median and John–Nirenberg inequalities.

Every check returns a :class:`VerificationReport` whose rows hold the two
sides of one instance of an inequality ``lhs <= rhs``.  A report passes when
every row holds up to a relative slack of ``1e-9``; all quantities are exact
cell sums, so the slack only absorbs floating-point rounding.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import maximal
from .corpus import CorpusEntry, random_step
from .czd import cz_decompose, level_set
from .errors import PreconditionError, ValidationError
from .grid import DyadicCube, FunctionSpec, StepFunction, lipschitz_constant, sample, upsample
from .median import check_fraction, level_medians, median_of
from .seminorm import SeminormConfig, jn_seminorm, jn_seminorm_bruteforce

SLACK = 1e-9
PROPERTY_TOL = 1e-12


# ---------------------------------------------------------------------------
# constants

def jn_constant(p: float) -> float:
    """``2^(p+3) (2^(1/p) - 1)^(-p)``, the John–Nirenberg constant for medians."""
    return 2.0 ** (p + 3) * (2.0 ** (1.0 / p) - 1.0) ** (-p)


def equivalence_constant(p: float) -> float:
    """``2cp/(p-1)``: average seminorm over median seminorm; reused for the maximal operator."""
    return 2.0 * jn_constant(p) * p / (p - 1.0)


def l1_constant(p: float) -> float:
    return 2.0 ** (p + 1) * (p / (p - 1.0)) ** p


def good_lambda_constants(p: float, K: float) -> tuple[float, float]:
    return 2.0**p / (K - 1.0) ** p, 1.0 / (2.0 * K**p)


# ---------------------------------------------------------------------------
# reports

@dataclass
class Row:
    params: dict
    lhs: float
    rhs: float

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return holds(self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {"params": self.params, "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin}


def holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + SLACK * abs(rhs)


@dataclass
class VerificationReport:
    name: str
    rows: list[Row]
    empirical_constant: float | None = None
    theoretical_constant: float | None = None
    corpus: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.rows)

    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.holds]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "empirical_constant": self.empirical_constant,
            "theoretical_constant": self.theoretical_constant,
            "rows": [r.to_dict() for r in self.rows],
            "corpus": self.corpus,
            "details": self.details,
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        keys = sorted({k for r in self.rows for k in r.params})
        writer.writerow(["check", *keys, "lhs", "rhs", "margin", "holds"])
        for r in self.rows:
            writer.writerow([self.name, *(r.params.get(k, "") for k in keys), repr(r.lhs), repr(r.rhs), repr(r.margin), r.holds])
        return out.getvalue()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.empirical_constant is not None:
            extra = f" empirical={self.empirical_constant:.6g}"
        if self.theoretical_constant is not None:
            extra += f" theoretical={self.theoretical_constant:.6g}"
        return f"{status} {self.name}: {len(self.rows)} rows{extra}"


def merge_reports(name: str, reports: Sequence[VerificationReport], ids: Sequence[str]) -> VerificationReport:
    """Concatenate per-function reports; the empirical constant is the largest observed."""
    rows = []
    for rid, rep in zip(ids, reports):
        for r in rep.rows:
            rows.append(Row({"function": rid, **r.params}, r.lhs, r.rhs))
    observed = [r.empirical_constant for r in reports if r.empirical_constant is not None]
    theoretical = {r.theoretical_constant for r in reports}
    corpus = [c for r in reports for c in r.corpus]
    details = {rid: rep.details for rid, rep in zip(ids, reports) if rep.details}
    return VerificationReport(
        name,
        rows,
        max(observed) if observed else None,
        theoretical.pop() if len(theoretical) == 1 else None,
        corpus,
        details,
    )


def geometric_grid(lo: float, hi: float, count: int = 40) -> list[float]:
    if not (lo > 0 and hi > 0):
        raise ValidationError(f"lambda grid bounds must be positive, got {lo}, {hi}")
    if count < 1:
        raise ValidationError("lambda grid needs at least one point")
    if count == 1 or hi <= lo:
        return [float(lo)]
    return [float(x) for x in np.geomspace(lo, hi, count)]


def _scale(f: StepFunction) -> float:
    peak = float(np.max(np.abs(f.values)))
    return peak if peak > 0 else 1.0


def default_lambda_grid(f: StepFunction, t: float | None = None, count: int = 40) -> list[float]:
    """Geometric points over ``[max(m^t_|f|(Q0), 1e-6 scale), 2 max|f|]``, ``scale = max|f|``."""
    scale = _scale(f)
    lo = 1e-6 * scale
    if t is not None:
        lo = max(lo, float(level_medians(f, 0, t, absolute=True)[0]))
    return geometric_grid(lo, max(2.0 * scale, lo), count)


def _check_positive_grid(grid: Iterable[float]) -> list[float]:
    grid = [float(x) for x in grid]
    if any(not (x > 0 and math.isfinite(x)) for x in grid):
        raise ValidationError("every lambda must be a positive finite number")
    return grid


def sup_distribution(g: np.ndarray, cell_measure: float, p: float) -> float:
    """``sup_lam lam^p |{g > lam}|`` for ``g >= 0``, reached as ``lam`` rises to a value of ``g``."""
    a = np.sort(g)[::-1]
    a = a[a > 0]
    if a.size == 0:
        return 0.0
    counts = np.searchsorted(-a, -a, side="right")
    return float(np.max(a**p * counts * cell_measure))


# ---------------------------------------------------------------------------
# inequality checks on one function

def verify_good_lambda(f: StepFunction, p: float, t: float, K: float, s: float, lambda_grid=None) -> VerificationReport:
    """``|E_{K lam}| <= 2^p/(K-1)^p * ||f||^p / lam^p + |E_lam| / (2 K^p)`` for each ``lam``."""
    n = f.dim
    if not p > 1:
        raise PreconditionError(f"good-lambda needs p > 1, got p={p}")
    if not 0 < t <= 2.0 ** -(n + 1):
        raise PreconditionError(f"good-lambda needs 0 < t <= 2^-(n+1) = {2.0 ** -(n + 1)}, got t={t}")
    if not K > 1:
        raise PreconditionError(f"good-lambda needs K > 1, got K={K}")
    if not 0 < s <= t / (2 * K**p):
        raise PreconditionError(f"good-lambda needs 0 < s <= t/(2K^p) = {t / (2 * K**p)}, got s={s}")
    root = float(level_medians(f, 0, t, absolute=True)[0])
    grid = default_lambda_grid(f, t) if lambda_grid is None else _check_positive_grid(lambda_grid)
    for lam in grid:
        if lam < root:
            raise PreconditionError(f"good-lambda needs lambda >= m^t_|f|(Q0) = {root!r}, got {lam!r}")
    norm_p = jn_seminorm(f, SeminormConfig(p, "med-optimal", s)).value_p
    A, B = good_lambda_constants(p, K)
    rows = []
    for lam in grid:
        _, e_lam = level_set(f, t, lam)
        _, e_klam = level_set(f, t, K * lam)
        rows.append(Row({"lambda": lam}, e_klam, A * norm_p / lam**p + B * e_lam))
    return VerificationReport(
        "good-lambda",
        rows,
        details={"p": p, "t": t, "K": K, "s": s, "seminorm_p": norm_p, "root_median": root},
    )


def verify_jn_inequality(f: StepFunction, p: float, s: float, r: float, lambda_grid=None) -> VerificationReport:
    """``|{|f - m^r_f(Q0)| > lam}| <= c ||f||^p / lam^p`` with ``c = 2^(p+3)(2^(1/p)-1)^(-p)``.

    Besides the grid rows, one row compares the exact supremum of
    ``lam^p |{...> lam}|`` with ``c ||f||^p``.
    """
    n = f.dim
    if not p > 1:
        raise PreconditionError(f"John-Nirenberg inequality needs p > 1, got p={p}")
    if not 0 < s <= 2.0 ** -(n + 3):
        raise PreconditionError(f"John-Nirenberg inequality needs 0 < s <= 2^-(n+3) = {2.0 ** -(n + 3)}, got s={s}")
    if not s <= r <= 0.5:
        raise PreconditionError(f"John-Nirenberg inequality needs s <= r <= 1/2, got s={s}, r={r}")
    center = median_of(f.values, r)
    g = np.abs(f.values - center)
    h = f.grid.cell_measure
    norm_p = jn_seminorm(f, SeminormConfig(p, "med-optimal", s)).value_p
    c = jn_constant(p)
    sup = sup_distribution(g, h, p)
    if norm_p == 0 and sup > 0:
        raise AssertionError("zero median seminorm with a nonzero distribution function")
    if lambda_grid is None:
        top = float(g.max()) if g.max() > 0 else 1.0
        lambda_grid = geometric_grid(1e-6 * _scale(f), 2 * top, 40)
    rows = []
    for lam in _check_positive_grid(lambda_grid):
        dist = int(np.count_nonzero(g > lam)) * h
        rows.append(Row({"lambda": lam}, dist, c * norm_p / lam**p))
    rows.append(Row({"lambda": "sup"}, sup, c * norm_p))
    return VerificationReport(
        "jn-inequality",
        rows,
        empirical_constant=sup / norm_p if norm_p > 0 else 0.0,
        theoretical_constant=c,
        details={"p": p, "s": s, "r": r, "seminorm_p": norm_p, "center": center},
    )


def verify_equivalence(f: StepFunction, p: float, s: float) -> VerificationReport:
    """``s ||f||_med <= ||f||_avg <= (2cp/(p-1)) ||f||_med``."""
    if not p > 1:
        raise PreconditionError(f"equivalence needs p > 1, got p={p}")
    if not 0 < s <= 2.0 ** -(f.dim + 3):
        raise PreconditionError(f"equivalence needs 0 < s <= 2^-(n+3) = {2.0 ** -(f.dim + 3)}, got s={s}")
    med = jn_seminorm(f, SeminormConfig(p, "med-optimal", s)).value
    avg = jn_seminorm(f, SeminormConfig(p)).value
    C = equivalence_constant(p)
    rows = [Row({"side": "lower"}, s * med, avg), Row({"side": "upper"}, avg, C * med)]
    ratio = avg / med if med > 0 else None
    return VerificationReport(
        "equivalence",
        rows,
        empirical_constant=ratio,
        theoretical_constant=C,
        details={"p": p, "s": s, "median_seminorm": med, "average_seminorm": avg, "ratio": ratio},
    )


def verify_lemma32(f: StepFunction, p: float, s: float, t: float) -> VerificationReport:
    """``||f||_med^p <= sup sum |Q| m^s(|f - m^t_f(Q)|)^p <= 2^p ||f||_med^p``."""
    check_fraction("s", s, 0.5)
    check_fraction("t", t, 0.5)
    if s > t:
        raise PreconditionError(f"needs s <= t, got s={s}, t={t}")
    low = jn_seminorm(f, SeminormConfig(p, "med-optimal", s)).value_p
    mid = jn_seminorm(f, SeminormConfig(p, "med-center", s, t)).value_p
    rows = [Row({"side": "lower"}, low, mid), Row({"side": "upper"}, mid, 2.0**p * low)]
    return VerificationReport(
        "lemma32",
        rows,
        empirical_constant=mid / low if low > 0 else None,
        theoretical_constant=2.0**p,
        details={"p": p, "s": s, "t": t, "optimal_p": low, "centered_p": mid},
    )


def verify_maximal_bound(f: StepFunction, p: float) -> VerificationReport:
    """``||M^d f||_JN <= (2cp/(p-1)) ||f||_JN`` with the median John–Nirenberg ``c``."""
    if not p > 1:
        raise PreconditionError(f"maximal bound needs p > 1, got p={p}")
    cfg = SeminormConfig(p)
    base = jn_seminorm(f, cfg).value
    lifted = jn_seminorm(maximal.maximal_avg(f), cfg).value
    C = equivalence_constant(p)
    row = Row({"p": p}, lifted, C * base)
    return VerificationReport(
        "maximal-bound",
        [row],
        empirical_constant=lifted / base if base > 0 else None,
        theoretical_constant=C,
        details={"input_seminorm": base, "maximal_seminorm": lifted, "value_only": base == 0},
    )


def verify_l1_bound(f: StepFunction, p: float) -> VerificationReport:
    """``||(M^d f)^(1/p)||_JN^p <= 2^(p+1) (p/(p-1))^p ||f||_L1``."""
    if not p > 1:
        raise PreconditionError(f"L1 bound needs p > 1, got p={p}")
    Mf = maximal.maximal_avg(f)
    root = Mf.with_values(Mf.values ** (1.0 / p))
    lhs = jn_seminorm(root, SeminormConfig(p)).value_p
    l1 = float(np.abs(f.values).sum() * f.grid.cell_measure)
    C = l1_constant(p)
    return VerificationReport(
        "l1-bound",
        [Row({"p": p}, lhs, C * l1)],
        empirical_constant=lhs / l1 if l1 > 0 else None,
        theoretical_constant=C,
        details={"L1": l1, "maximal_integral": Mf.integral()},
    )


def verify_weak_type(f: StepFunction, lambda_grid=None) -> VerificationReport:
    """``lam |{M^d f > lam}| <= ||f||_L1`` on the grid and at the exact supremum."""
    Mf = maximal.maximal_avg(f)
    h = f.grid.cell_measure
    l1 = float(np.abs(f.values).sum() * h)
    grid = default_lambda_grid(f) if lambda_grid is None else _check_positive_grid(lambda_grid)
    rows = [Row({"lambda": lam}, lam * maximal.superlevel_measure(Mf, lam), l1) for lam in grid]
    sup = sup_distribution(Mf.values, h, 1.0)
    rows.append(Row({"lambda": "sup"}, sup, l1))
    return VerificationReport(
        "weak-type",
        rows,
        empirical_constant=sup / l1 if l1 > 0 else None,
        theoretical_constant=1.0,
        details={"L1": l1},
    )


# ---------------------------------------------------------------------------
# structural checks

def verify_cz_properties(f: StepFunction, t: float, lambdas: Sequence[float]) -> VerificationReport:
    """Stopping-time properties, level-set identity and monotonicity, as violation counts."""
    M = maximal.maximal_median(f, t).values
    absf = np.abs(f.values)
    bad = {"selected": 0, "parent": 0, "outside": 0, "level_set": 0, "monotone": 0}
    prev_mask = None
    for lam in sorted(lambdas):
        result = cz_decompose(f, t, lam)
        for cube in result.cubes:
            if not median_of(np.abs(f.cube_values(cube)), t) > lam:
                bad["selected"] += 1
            if not median_of(np.abs(f.cube_values(cube.parent())), t) <= lam:
                bad["parent"] += 1
        mask = result.cubes.cell_mask(f.grid)
        bad["outside"] += int(np.count_nonzero(absf[~mask] > lam))
        if result.cubes.measure(f.grid) != maximal.superlevel_measure(f.with_values(M), lam):
            bad["level_set"] += 1
        if prev_mask is not None and np.any(mask & ~prev_mask):
            bad["monotone"] += 1
        prev_mask = mask
    rows = [Row({"property": k}, float(v), 0.0) for k, v in bad.items()]
    return VerificationReport("cz-properties", rows, details={"t": t, "lambdas": list(map(float, lambdas))})


def threshold_scan_median(values, s: float) -> float:
    """Maximal s-median straight from the infimum definition, with exact rational measures."""
    v = np.asarray(values, dtype=float).reshape(-1)
    total = Fraction(repr(float(s))) * v.size
    for a in np.unique(v):
        if int(np.count_nonzero(v > a)) < total:
            return float(a)
    raise AssertionError("unreachable: the largest value is always admissible")


def _random_partition(cube: DyadicCube, depth: int, rng: np.random.Generator) -> list[DyadicCube]:
    if cube.level == depth or rng.random() < 0.4:
        return [cube]
    out = []
    for child in cube.children():
        out += _random_partition(child, depth, rng)
    return out


def run_median_property_suite(
    seed_count: int,
    dims: Sequence[int] = (1,),
    depths: Sequence[int] = (4,),
    seed0: int = 0,
    tol: float = PROPERTY_TOL,
) -> VerificationReport:
    """The ten maximal-median properties plus the order-statistic identity on random instances.

    Each row reports the worst excess ``left - right`` of one property over
    all instances against the tolerance; the first violating instance is
    stored in ``details``.
    """
    if seed_count < 1 or not dims or not depths:
        raise ValidationError("property suite needs positive counts")
    s_choices = [1 / 16, 1 / 8, 1 / 4, 3 / 8, 1 / 2, 5 / 8, 3 / 4, 1.0]
    worst: dict[str, float] = {}
    witness: dict[str, dict] = {}

    def record(name: str, excess: float, instance: dict) -> None:
        if excess > worst.get(name, -math.inf):
            worst[name] = excess
        if excess > tol and name not in witness:
            witness[name] = instance

    combos = list(itertools.product(dims, depths))
    for i in range(seed_count):
        dim, depth = combos[i % len(combos)]
        seed = seed0 + i
        rng = np.random.default_rng(10_000_019 + seed)
        f = random_step(seed, dim, depth)
        level = int(rng.integers(0, depth + 1))
        Q = DyadicCube(level, tuple(int(k) for k in rng.integers(0, 2**level, dim)))
        v = f.cube_values(Q)
        s, s2 = sorted(rng.choice(s_choices, 2))
        base = {"seed": seed, "dim": dim, "depth": depth, "cube": Q.to_dict(), "s": float(s), "values": v.tolist()}
        m = median_of(v, s)

        record("order-statistic", abs(m - threshold_scan_median(v, s)), base)
        record("i-monotone-in-s", median_of(v, s2) - m, {**base, "s_prime": float(s2)})
        bump = np.abs(rng.standard_normal(v.size)) * (rng.random(v.size) < 0.5)
        record("ii-monotone-in-f", m - median_of(v + bump, s), {**base, "g": (v + bump).tolist()})
        if level > 0:
            vp = f.cube_values(Q.parent())
            record("iii-parent", m - median_of(vp, s / 2**dim), {**base, "parent_values": vp.tolist()})
        clipped = np.clip(v, -50, 50)
        em = math.exp(median_of(clipped, s))
        record("iv-exp", abs(median_of(np.exp(clipped), s) - em) / em, base)
        a, b = float(rng.uniform(0.1, 5)), float(rng.uniform(-5, 5))
        scale = max(1.0, float(np.max(np.abs(v))))
        record("iv-affine", abs(median_of(a * v + b, s) - (a * m + b)) / (a * scale + abs(b)), {**base, "a": a, "b": b})
        c = float(rng.uniform(-5, 5))
        record("v-shift", abs(median_of(v + c, s) - (m + c)) / (scale + abs(c)), {**base, "c": c})
        record("vi-scale", abs(median_of(a * v, s) - a * m) / (a * scale), {**base, "c": a})
        if s < 1:
            # at s = 1 the right side is a 0-median, i.e. +inf
            record("vii-absolute", abs(m) - median_of(np.abs(v), min(s, 1 - s)), base)
        t1 = float(rng.integers(1, 64)) / 64 * float(s)
        t2 = float(s) - t1
        if t2 > 0:
            g = f.with_values(random_step(seed + 7_777_777, dim, depth).values).cube_values(Q)
            lhs = median_of(v + g, s)
            rhs = median_of(v, t1) + median_of(g, t2)
            record("viii-subadditive", (lhs - rhs) / max(1.0, abs(lhs), abs(rhs)), {**base, "g": g.tolist(), "t1": t1, "t2": t2})
        for p in (1.0, 2.0):
            bound = (np.mean(np.abs(v) ** p) / s) ** (1.0 / p)
            record(f"ix-lp-p{int(p)}", (median_of(np.abs(v), s) - bound) / max(1.0, bound), base)
        parts = _random_partition(Q, depth, rng)
        meds = [median_of(f.cube_values(P), s) for P in parts]
        record("x-union-lower", min(meds) - m, {**base, "parts": [P.to_dict() for P in parts]})
        record("x-union-upper", m - max(meds), {**base, "parts": [P.to_dict() for P in parts]})

    rows = [Row({"property": k}, max(worst[k], 0.0), tol) for k in sorted(worst)]
    return VerificationReport(
        "median-properties",
        rows,
        details={"seed_count": seed_count, "dims": list(dims), "depths": list(depths), "seed0": seed0, "witnesses": witness},
    )


def verify_differentiation(depth: int = 10, dim: int = 1, s_values: Sequence[float] = (0.25, 0.5), spec: FunctionSpec | None = None) -> VerificationReport:
    """Median differentiation on a Lipschitz function.

    For each level ``j`` and cell, the ``s``-median over the cell's level-``j``
    ancestor differs from the cell's midpoint value by at most
    ``L * diam(level-j cube)``.
    """
    spec = spec or FunctionSpec("smooth-lipschitz", {"amplitude": 1.0, "frequency": 1.0})
    f = sample(spec, dim, depth)
    L = lipschitz_constant(spec, dim)
    rows = []
    for s in s_values:
        for level in range(depth, -1, -1):
            med = level_medians(f, level, s)
            err = float(np.max(np.abs(upsample(med, dim, level, depth) - f.values)))
            rows.append(Row({"s": s, "level": level}, err, L * f.grid.side(level) * math.sqrt(dim)))
    return VerificationReport(
        "differentiation",
        rows,
        corpus=[{"spec": spec.to_dict(), "dim": dim, "depth": depth}],
        details={"lipschitz": L},
    )


def verify_dp_bruteforce(seed_count: int = 200, depths: Sequence[int] = (1, 2, 3, 4), p_values=(1.5, 2.0, 3.0), seed0: int = 0) -> VerificationReport:
    """Exact agreement of the antichain DP with exhaustive enumeration, all three modes."""
    mismatch = {"avg-mean": 0, "med-optimal": 0, "med-center": 0}
    first = {}
    for i in range(seed_count):
        seed = seed0 + i
        depth = depths[i % len(depths)]
        p = p_values[i % len(p_values)]
        f = random_step(seed, 1, depth)
        rng = np.random.default_rng(20_000_003 + seed)
        s = float(rng.choice([1 / 16, 1 / 8, 1 / 4, 1 / 2]))
        t = float(rng.choice([x for x in (1 / 16, 1 / 8, 1 / 4, 1 / 2) if x >= s]))
        configs = {
            "avg-mean": SeminormConfig(p),
            "med-optimal": SeminormConfig(p, "med-optimal", s),
            "med-center": SeminormConfig(p, "med-center", s, t),
        }
        for mode, cfg in configs.items():
            dp = jn_seminorm(f, cfg).value_p
            bf = jn_seminorm_bruteforce(f, cfg).value_p
            if dp != bf:
                mismatch[mode] += 1
                first.setdefault(mode, {"seed": seed, "depth": depth, "p": p, "dp": dp, "bruteforce": bf})
    rows = [Row({"mode": k}, float(v), 0.0) for k, v in mismatch.items()]
    return VerificationReport("dp-bruteforce", rows, details={"seed_count": seed_count, "witnesses": first})


# ---------------------------------------------------------------------------
# corpus drivers

def run_on_corpus(name: str, check: Callable[[StepFunction], VerificationReport], corpus: Sequence[CorpusEntry]) -> VerificationReport:
    reports, ids = [], []
    for entry in corpus:
        rep = check(entry.build())
        rep.corpus = [entry.to_dict()]
        reports.append(rep)
        ids.append(entry.id)
    return merge_reports(name, reports, ids)


def divergence_experiment(depths: Sequence[int] = tuple(range(8, 17)), p: float = 2.0, rule: str = "midpoint") -> VerificationReport:
    """The L1 bound for the extremal example at growing depth, with ``int M^d f`` recorded per depth.

    ``int M^d f = ||(M^d f)^(1/p)||_p^p`` grows without bound as the depth
    increases because the function is integrable but not in ``L log+ L``.
    """
    spec = FunctionSpec("jn-extremal", sampling_rule=rule)
    reports, ids = [], []
    for depth in depths:
        rep = verify_l1_bound(sample(spec, 1, depth), p)
        rep.corpus = [{"spec": spec.to_dict(), "dim": 1, "depth": depth}]
        reports.append(rep)
        ids.append(f"jn-extremal-J{depth}")
    merged = merge_reports("l1-bound-divergence", reports, ids)
    integrals = [rep.details["maximal_integral"] for rep in reports]
    merged.details = {
        "depths": list(depths),
        "maximal_integral": integrals,
        "monotone": all(b > a for a, b in zip(integrals, integrals[1:])),
        "growth_factor": integrals[-1] / integrals[0],
    }
    return merged


def verify_cz_suite(
    seed_count: int = 100, n_lambdas: int = 20, dim: int = 1, depth: int = 6, seed0: int = 0
) -> tuple[VerificationReport, VerificationReport]:
    """Stopping-time properties and the weak type bound on seeded random functions."""
    t_values = (1 / 8, 1 / 4, 1 / 2, 1.0)
    cz_reports, weak_reports, ids = [], [], []
    for i in range(seed_count):
        seed = seed0 + i
        f = random_step(seed, dim, depth)
        t = t_values[i % len(t_values)]
        lambdas = default_lambda_grid(f, t, n_lambdas)
        cz_reports.append(verify_cz_properties(f, t, lambdas))
        weak_reports.append(verify_weak_type(f, lambdas))
        ids.append(f"random-{seed}")
    cz = merge_reports("cz-properties", cz_reports, ids)
    weak = merge_reports("weak-type-random", weak_reports, ids)
    cz.details = {"seed_count": seed_count, "n_lambdas": n_lambdas, "dim": dim, "depth": depth, "t_values": list(t_values)}
    weak.details = dict(cz.details)
    return cz, weak


def constants_chain(p_values: Sequence[float] = (1.5, 2.0, 4.0)) -> VerificationReport:
    """The ``c`` inside the equivalence and maximal-bound constants is the John–Nirenberg ``c``."""
    rows = []
    for p in p_values:
        c = jn_constant(p)
        recovered = equivalence_constant(p) * (p - 1.0) / (2.0 * p)
        rows.append(Row({"p": p, "check": "equivalence"}, abs(recovered - c), 1e-12 * c))
        K = 2.0 ** (1.0 / p)
        c0 = 2.0 ** (p + 1) * K**p * (K - 1.0) ** (-p)
        rows.append(Row({"p": p, "check": "induction-constant"}, abs(c0 * K**p - c), 1e-12 * c))
    return VerificationReport("constants-chain", rows, theoretical_constant=jn_constant(2.0))
