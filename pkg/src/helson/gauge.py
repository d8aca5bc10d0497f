"""Hausdorff gauge functions.

A gauge ``h`` is nonnegative, continuous and increasing with ``h(0) = 0``.
Three families are supported:

- ``power``: ``h(t) = t**alpha`` with ``0 < alpha <= d``;
- ``power_log``: ``h(t) = t**d * log(1/t)`` on ``[0, exp(-1/d)]``;
- ``table``: monotone piecewise-linear interpolation of sample pairs.

Frequencies in the construction grow fast enough that ``t = c/p`` underflows
double precision, so every gauge also evaluates ``log(h(t) / t**d)`` directly
from ``log t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

POWER = "power"
POWER_LOG = "power_log"
TABLE = "table"


def c4_constant(d: int) -> float:
    """Lebesgue volume of the ball of diameter 1 in ``R^d``.

    With it, a ball of diameter ``delta`` has volume ``c4 * delta**d``.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return math.exp(0.5 * d * math.log(math.pi) - d * math.log(2.0) - gammaln(0.5 * d + 1.0))


@dataclass(frozen=True)
class GaugeFunction:
    kind: str
    d: int
    alpha: float | None = None
    knots: tuple[tuple[float, float], ...] | None = None
    regularized: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == POWER:
            if self.alpha is None or not (0.0 < self.alpha <= self.d):
                raise ValueError(f"power gauge needs 0 < alpha <= d, got alpha={self.alpha}")
        elif self.kind == POWER_LOG:
            pass
        elif self.kind == TABLE:
            if not self.knots or len(self.knots) < 2:
                raise ValueError("table gauge needs at least two knots")
            ts = [k[0] for k in self.knots]
            hs = [k[1] for k in self.knots]
            if ts[0] != 0.0 or hs[0] != 0.0:
                raise ValueError("table gauge must start at (0, 0)")
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError("table knots must have strictly increasing t")
            if any(b <= a for a, b in zip(hs, hs[1:])):
                raise ValueError("table values must be strictly increasing")
        else:
            raise ValueError(f"unknown gauge kind {self.kind!r}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def power(cls, alpha: float, d: int) -> GaugeFunction:
        return cls(POWER, d, alpha=float(alpha))

    @classmethod
    def power_log(cls, d: int) -> GaugeFunction:
        return cls(POWER_LOG, d)

    @classmethod
    def table(cls, pairs, d: int) -> GaugeFunction:
        pairs = [(float(t), float(h)) for t, h in pairs]
        if pairs[0] != (0.0, 0.0):
            pairs.insert(0, (0.0, 0.0))
        return cls(TABLE, d, knots=tuple(pairs))

    # -- evaluation ---------------------------------------------------------

    @property
    def t_max(self) -> float:
        """Upper end of the interval on which ``h`` is increasing."""
        if self.kind == POWER:
            return math.inf
        if self.kind == POWER_LOG:
            return math.exp(-1.0 / self.d)
        return self.knots[-1][0]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == POWER:
            out = t**self.alpha
        elif self.kind == POWER_LOG:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(t > 0, t**self.d * np.log(1.0 / np.where(t > 0, t, 1.0)), 0.0)
        elif self.regularized:
            out = t**self.d * self._running_inf(t)
            out = np.where(t > 0, out, 0.0)
        else:
            out = self._interp(t)
        return out if out.ndim else float(out)

    def ratio(self, t):
        """``h(t) / t**d``."""
        t = np.asarray(t, dtype=float)
        return self(t) / t**self.d

    def log_ratio(self, log_t: float) -> float:
        """``log(h(t) / t**d)`` evaluated from ``log t``; safe for tiny ``t``."""
        if self.kind == POWER:
            return (self.alpha - self.d) * log_t
        if self.kind == POWER_LOG:
            if log_t >= 0:
                return -math.inf
            return math.log(-log_t)
        t1, h1 = self.knots[1]
        if log_t < math.log(t1):
            # first segment is h = slope * t; its ratio is decreasing (or constant)
            return math.log(h1 / t1) + (1 - self.d) * log_t
        return float(np.log(self.ratio(math.exp(log_t))))

    def log_value(self, log_t: float) -> float:
        return self.log_ratio(log_t) + self.d * log_t

    # -- table internals ----------------------------------------------------

    def _arrays(self):
        ts = np.array([k[0] for k in self.knots])
        hs = np.array([k[1] for k in self.knots])
        slopes = np.diff(hs) / np.diff(ts)
        slopes = np.append(slopes, slopes[-1])
        intercepts = hs - slopes * ts
        return ts, hs, slopes, intercepts

    def _interp(self, t):
        ts, hs, slopes, intercepts = self._arrays()
        idx = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 1)
        return intercepts[idx] + slopes[idx] * t

    def _segment_ratio(self, tau, a, b):
        return (a + b * tau) / tau**self.d

    def _segment_min(self, lo, hi, a, b):
        """Minimum of ``(a + b*tau)/tau**d`` over ``[lo, hi]`` (``lo > 0``)."""
        best = np.minimum(self._segment_ratio(lo, a, b), self._segment_ratio(hi, a, b))
        if self.d > 1:
            with np.errstate(divide="ignore", invalid="ignore"):
                crit = self.d * a / ((self.d - 1) * b)
            inside = np.isfinite(crit) & (crit > lo) & (crit < hi)
            if np.any(inside):
                safe = np.where(inside, crit, hi)
                best = np.where(inside, np.minimum(best, self._segment_ratio(safe, a, b)), best)
        return best

    def _running_inf(self, t):
        """``inf over 0 < tau <= t`` of ``h(tau)/tau**d`` for the unregularized table."""
        ts, hs, slopes, intercepts = self._arrays()
        n = len(ts)
        # prefix[i]: infimum of the ratio over (0, ts[i]]
        prefix = np.empty(n)
        prefix[0] = np.inf
        for i in range(1, n):
            if i == 1:
                seg = self._segment_ratio(ts[1], intercepts[0], slopes[0])
            else:
                seg = self._segment_min(ts[i - 1], ts[i], intercepts[i - 1], slopes[i - 1])
            prefix[i] = min(prefix[i - 1], float(seg))
        t = np.asarray(t, dtype=float)
        safe_t = np.where(t > 0, t, ts[1])
        idx = np.clip(np.searchsorted(ts, safe_t, side="right") - 1, 0, n - 1)
        a, b = intercepts[idx], slopes[idx]
        first = idx == 0
        lo = np.where(first, safe_t, ts[idx])
        seg = np.where(first, self._segment_ratio(safe_t, a, b), self._segment_min(lo, safe_t, a, b))
        return np.minimum(prefix[idx], seg)

    # -- text form ----------------------------------------------------------

    def to_spec(self) -> str:
        if self.kind == POWER:
            return f"power:{self.alpha!r}"
        if self.kind == POWER_LOG:
            return "powerlog"
        body = ";".join(f"{t!r},{h!r}" for t, h in self.knots)
        return ("regtable:" if self.regularized else "table:") + body


def parse_gauge(spec: str, d: int) -> GaugeFunction:
    """Parse ``power:<alpha>``, ``powerlog`` or ``table:t,h;t,h;...``."""
    spec = spec.strip()
    if spec in ("powerlog", "power_log"):
        return GaugeFunction.power_log(d)
    if spec.startswith("power:"):
        return GaugeFunction.power(float(spec.split(":", 1)[1]), d)
    for prefix in ("table:", "regtable:"):
        if spec.startswith(prefix):
            pairs = [tuple(map(float, item.split(","))) for item in spec[len(prefix):].split(";")]
            g = GaugeFunction.table(pairs, d)
            return regularize_gauge(g) if prefix == "regtable:" else g
    raise ValueError(f"unrecognized gauge {spec!r}; expected power:<alpha>, powerlog or table:...")


def regularize_gauge(h: GaugeFunction) -> GaugeFunction:
    """Replace ``h`` by ``t**d * inf_{tau <= t} h(tau)/tau**d``.

    The result never exceeds ``h`` and has a nonincreasing ratio
    ``h(t)/t**d``. Power gauges with ``alpha <= d`` and ``power_log`` (on its
    domain) already have that property and are returned unchanged.
    """
    if h.kind != TABLE or h.regularized:
        return h
    return GaugeFunction(TABLE, h.d, knots=h.knots, regularized=True)


@dataclass(frozen=True)
class DivergenceReport:
    t: np.ndarray
    ratios: np.ndarray
    diverging: bool


def divergence_check(h: GaugeFunction, t_grid=None, factor: float = 2.0) -> DivergenceReport:
    """Tabulate ``h(t) t^-d`` along a decreasing grid and judge divergence.

    The verdict is "diverging" when the ratios never decrease along the grid
    and the last one exceeds the first by at least ``factor``.
    """
    if t_grid is None:
        t_grid = np.geomspace(min(1e-2, 0.5 * h.t_max), 1e-12, 41)
    t = np.asarray(t_grid, dtype=float)
    if np.any(np.diff(t) >= 0) or np.any(t <= 0):
        raise ValueError("t_grid must be positive and strictly decreasing")
    ratios = np.array([math.exp(h.log_ratio(math.log(x))) for x in t])
    monotone = bool(np.all(np.diff(ratios) >= -1e-12 * np.abs(ratios[1:])))
    diverging = bool(monotone and ratios[-1] >= factor * ratios[0])
    return DivergenceReport(t, ratios, diverging)
