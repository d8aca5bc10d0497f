"""Counting, gauge and mass-distribution inequalities for a finite-depth construction.

Counts and frequencies can be astronomically large (count-only levels), so
the counting bound is evaluated in exact rational arithmetic and the gauge
bound in log space. Reported margins are floats and may be ``±inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from .construction import ConstructionResult
from .gauge import GaugeFunction, c4_constant, regularize_gauge
from .measures import TWO_PI, natural_measure


def _to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def _log_int(n: int | Fraction) -> float:
    if isinstance(n, Fraction):
        return math.log(n.numerator) - math.log(n.denominator)
    return math.log(n)


@dataclass(frozen=True)
class CountMargin:
    j: int
    telescoped: float  # N_j - c3^j p_j^d
    per_step: float  # N_j - c3 (p_j/p_{j-1})^d N_{j-1}
    ok: bool


def verify_count_bound(result: ConstructionResult) -> list[CountMargin]:
    """Margins of ``N_j >= c3 (p_j/p_{j-1})^d N_{j-1}`` and ``N_j >= c3^j p_j^d``.

    ``p_0`` is taken as ``c / l_0`` so that ``l_j = c / p_j`` at every level.
    """
    if result.depth < 1:
        raise ValueError("the construction has no level beyond 0")
    d = result.d
    c3 = Fraction(result.c3)
    out = []
    p_prev: Fraction = result.p0
    for lv_prev, lv in zip(result.levels, result.levels[1:]):
        p = Fraction(lv.frequency)
        tele = lv.count - c3**lv.j * p**d
        step = lv.count - c3 * (p / p_prev) ** d * lv_prev.count
        out.append(CountMargin(lv.j, _to_float(tele), _to_float(step), tele >= 0 and step >= 0))
        p_prev = p
    return out


@dataclass(frozen=True)
class GaugeMargin:
    j: int
    value: float  # h(l_j) N_j
    margin: float  # h(l_j) N_j - c4
    log_margin: float  # log(h(l_j) N_j) - log(c4)

    @property
    def ok(self) -> bool:
        return self.log_margin >= 0


def verify_gauge_bound(result: ConstructionResult, h: GaugeFunction) -> list[GaugeMargin]:
    """``h(l_j) N_j - c4(d)`` at every level, level 0 included."""
    h = regularize_gauge(h)
    c4 = c4_constant(result.d)
    out = []
    for lv in result.levels:
        log_val = h.log_value(lv.log_side) + _log_int(lv.count)
        value = math.exp(log_val) if log_val < 700 else math.inf
        out.append(GaugeMargin(lv.j, value, value - c4, log_val - math.log(c4)))
    return out


def canonical_cover_sums(result: ConstructionResult, h: GaugeFunction) -> list[float]:
    """``N_j h(sqrt(d) l_j)``: the h-sum of the circumscribed balls of the level-j cubes."""
    h = regularize_gauge(h)
    half_log_d = 0.5 * math.log(result.d)
    out = []
    for lv in result.levels:
        log_val = h.log_value(lv.log_side + half_log_d) + _log_int(lv.count)
        out.append(math.exp(log_val) if log_val < 700 else math.inf)
    return out


def ball_level(result: ConstructionResult, delta: np.ndarray, J: int) -> np.ndarray:
    """Level ``j`` with ``l_{j+1}^d <= c4 delta^d <= l_j^d``, clamped to ``[0, J]``."""
    d = result.d
    c4 = c4_constant(d)
    log_sides = np.array([lv.log_side for lv in result.levels[: J + 1]])
    log_vol = math.log(c4) / d + np.log(np.asarray(delta, dtype=float))
    # number of levels whose side is >= the ball's equivalent side, minus one
    j = np.sum(log_sides[None, :] >= log_vol[:, None], axis=1) - 1
    return np.clip(j, 0, J)


@dataclass(frozen=True)
class MassBoundReport:
    J: int
    trials: int
    violations: int
    worst_ratio: float  # max over balls of mu_J(B) / bound
    centers: np.ndarray
    diameters: np.ndarray
    masses: np.ndarray
    bounds: np.ndarray


def mass_bound_sample(result: ConstructionResult, J: int, trials: int = 1000, seed: int = 0) -> MassBoundReport:
    """Test ``mu_J(B) <= c4 delta^d / (N_j l_j^d)`` on random balls.

    Centres are uniform over the bounding box of ``E_0``; diameters are
    log-uniform in ``[l_J, l_0]``. ``mu_J(B)`` counts level-``J`` atoms in the
    closed ball (distances on the torus).
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    d = result.d
    c4 = c4_constant(d)
    mu = natural_measure(result, J)
    lv0 = result.levels[0]
    lo = lv0.corners.min(axis=0)
    hi = lv0.corners.max(axis=0) + lv0.side

    rng = np.random.default_rng(seed)
    centers = lo + (hi - lo) * rng.random((trials, d))
    log_delta = rng.uniform(result.levels[J].log_side, lv0.log_side, size=trials)
    delta = np.exp(log_delta)

    tree = cKDTree(mu.points, boxsize=TWO_PI)
    hits = tree.query_ball_point(centers % TWO_PI, delta / 2, return_length=True)
    masses = hits / result.levels[J].count

    j = ball_level(result, delta, J)
    counts = np.array([float(result.levels[i].count) for i in range(J + 1)])
    sides = np.array([result.levels[i].side for i in range(J + 1)])
    bounds = c4 * delta**d / (counts[j] * sides[j] ** d)
    ratio = masses / bounds
    violations = int(np.sum(masses > bounds * (1 + 1e-12)))
    return MassBoundReport(J, trials, violations, float(ratio.max()), centers, delta, masses, bounds)


def box_dimension_estimate(result: ConstructionResult):
    """Least-squares slope of ``log N_j`` against ``log(1/l_j)`` over ``j = 1..J``.

    Returns ``(slope, residuals)``.
    """
    levels = result.levels[1:]
    x = np.array([-lv.log_side for lv in levels])
    y = np.array([_log_int(lv.count) for lv in levels])
    if len(np.unique(x)) < 2:
        raise ValueError("at least two distinct levels are needed to estimate a slope")
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), y - (slope * x + intercept)


def convergence_gaps(result: ConstructionResult, J: int, K: int = 20):
    """``|mu_hat_{J+1}(k) - mu_hat_J(k)|`` and the Lipschitz bound ``|k|_2 sqrt(d) l_J (2 pi)^-d``."""
    from .measures import FourierBox, fourier_coefficients

    d = result.d
    ks = FourierBox(K).lattice(d)
    a = fourier_coefficients(natural_measure(result, J), ks)
    b = fourier_coefficients(natural_measure(result, J + 1), ks)
    bound = np.linalg.norm(ks, axis=1) * math.sqrt(d) * result.levels[J].side / TWO_PI**d
    return np.abs(b - a), bound
