"""Nested cube hierarchy ``E_0 ⊃ E_1 ⊃ ...`` carrying cosine approximations.

Level ``j >= 1`` consists of cubes of side ``c / p_j`` centred on peaks or
troughs of ``cos(p_j x_s)``. Centres are stored exactly as integer lattice
indices ``k`` with ``centre = pi * k / p_j`` (``k`` even on a peak, odd on a
trough), so phases ``p_i * centre`` can be reduced modulo ``2 pi`` in integer
arithmetic.

Once a level would hold more than ``max_cubes`` cubes (or its frequency is too
large for int64 lattice arithmetic) it is kept *count-only*: its frequency and
exact cube count are tracked, its geometry is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import ROUND_CEILING, Decimal, localcontext
from fractions import Fraction

import numpy as np

from .gauge import GaugeFunction, c4_constant, regularize_gauge

TWO_PI = 2.0 * math.pi
TOL = 1e-9
# explicit lattice arithmetic needs p_i * k < 2**63 with k <= 2 p
P_EXPLICIT_MAX = 2**30
LOG_P_MAX = 1.0e6


class ConstructionError(RuntimeError):
    pass


class FrequencySelectionError(ConstructionError):
    pass


def compute_c(eps: float) -> float:
    """Arc length ``2 arccos(1 - eps)`` on which ``cos`` stays within ``eps`` of 1."""
    if not (0.0 < eps < 0.5):
        raise ValueError(f"epsilon must lie in (0, 1/2), got {eps}")
    return 2.0 * math.acos(1.0 - eps)


@dataclass(frozen=True)
class Cube:
    id: int
    corner: tuple[float, ...]
    side: float
    parent_id: int | None = None

    def __post_init__(self):
        if not self.side > 0:
            raise ValueError("cube side must be positive")
        if any(x < 0 or x + self.side > TWO_PI for x in self.corner):
            raise ValueError("cube must lie in [0, 2pi]^d")

    @property
    def center(self) -> tuple[float, ...]:
        return tuple(x + 0.5 * self.side for x in self.corner)


@dataclass(frozen=True)
class SignPattern:
    checkpoint_level: int
    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("sign pattern entries must be +1 or -1")


@dataclass(frozen=True)
class SignFamily:
    """The (possibly capped) family F(E_c) enumerated at checkpoint level ``c``."""

    checkpoint_level: int
    size: int
    truncated: bool
    signs: np.ndarray | None = None  # (size, N_c) int8; None when level c is count-only

    def pattern(self, function_id: int) -> SignPattern:
        if self.signs is None:
            raise ConstructionError(f"sign family at level {self.checkpoint_level} is not materialized")
        return SignPattern(self.checkpoint_level, tuple(int(s) for s in self.signs[function_id]))

    def __eq__(self, other):
        if not isinstance(other, SignFamily):
            return NotImplemented
        if (self.checkpoint_level, self.size, self.truncated) != (
            other.checkpoint_level,
            other.size,
            other.truncated,
        ):
            return False
        if self.signs is None or other.signs is None:
            return self.signs is None and other.signs is None
        return np.array_equal(self.signs, other.signs)


@dataclass(frozen=True)
class ScheduledApproximant:
    level: int
    coordinate: int  # 1-based
    function_id: int
    frequency: int
    checkpoint_level: int

    # cos(p x_s) = (e^{i p x_s} + e^{-i p x_s}) / 2
    wiener_norm = 1.0


@dataclass(eq=False)
class Level:
    j: int
    side: float
    log_side: float
    count: int
    frequency: int | None = None
    checkpoint: bool = False
    corners: np.ndarray | None = None  # (N, d) float
    lattice: np.ndarray | None = None  # (N, d) int64, centre = pi k / p
    parents: np.ndarray | None = None  # (N,) int64

    @property
    def explicit(self) -> bool:
        return self.corners is not None

    @property
    def centers(self) -> np.ndarray:
        if not self.explicit:
            raise ConstructionError(f"level {self.j} is count-only")
        if self.lattice is not None:
            return math.pi * self.lattice / self.frequency
        return self.corners + 0.5 * self.side

    @property
    def cubes(self) -> list[Cube]:
        if not self.explicit:
            raise ConstructionError(f"level {self.j} is count-only")
        parents = [None] * self.count if self.parents is None else [int(p) for p in self.parents]
        return [
            Cube(i, tuple(float(x) for x in row), self.side, parents[i])
            for i, row in enumerate(self.corners)
        ]

    def __eq__(self, other):
        if not isinstance(other, Level):
            return NotImplemented
        scalars = ("j", "side", "log_side", "count", "frequency", "checkpoint")
        if any(getattr(self, a) != getattr(other, a) for a in scalars):
            return False
        for a in ("corners", "lattice", "parents"):
            x, y = getattr(self, a), getattr(other, a)
            if (x is None) != (y is None):
                return False
            if x is not None and not np.array_equal(x, y):
                return False
        return True


@dataclass(frozen=True)
class ConstructionParams:
    d: int
    side: float  # l_0
    corners: tuple[tuple[float, ...], ...]
    epsilon: float
    depth: int
    function_cap: int = 64
    frequency_budget: int = 200
    max_cubes: int = 250_000
    gauge: GaugeFunction | None = None
    seed: int = 0

    @property
    def n0(self) -> int:
        return len(self.corners)


def validate_params(params: ConstructionParams) -> str | None:
    """Return ``None`` when ``params`` is admissible, else the first violated condition."""
    d, l0 = params.d, params.side
    if d < 1:
        return "dimension d must be >= 1"
    if params.n0 < 1:
        return "at least one initial cube is required"
    if 2**params.n0 < d:
        return "2^{N_0} < d"
    if not (0.0 < params.epsilon < 0.5):
        return "epsilon not in (0, 1/2)"
    if params.depth < 1:
        return "depth J must be >= 1"
    if not l0 > 0:
        return "initial side l_0 must be positive"
    if params.function_cap < 1:
        return "function_cap must be >= 1"
    for corner in params.corners:
        if len(corner) != d:
            return "initial corner has wrong dimension"
        if any(x <= 0 or x + l0 >= TWO_PI for x in corner):
            return "initial cubes must lie inside the open cube (0, 2pi)^d"
    pts = np.asarray(params.corners, dtype=float)
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            gap = np.maximum(np.abs(pts[a] - pts[b]) - l0, 0.0)
            if float(np.sqrt(np.sum(gap**2))) < l0 * (1 - 1e-12):
                return "pairwise distances between initial cubes must be >= l_0"
    if params.gauge is not None and params.gauge.d != d:
        return "gauge dimension differs from d"
    return None


# ---------------------------------------------------------------------------
# sign functions


def enumerate_sign_functions(level: Level, cap: int, seed: int = 0) -> SignFamily:
    """All ``2^N`` sign patterns of a level, or a seeded sample of ``cap`` of them.

    Patterns are listed in binary order of the function index, most
    significant bit on cube 0, bit value 0 meaning ``+1``.
    """
    n = level.count
    if not level.explicit:
        return SignFamily(level.j, cap, True, None)
    if n < 63 and 2**n <= cap:
        idx = np.arange(2**n, dtype=np.int64)[:, None]
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)[None, :]
        bits = (idx >> shifts) & 1
        return SignFamily(level.j, 2**n, False, (1 - 2 * bits).astype(np.int8))
    rng = np.random.default_rng([seed, level.j])
    signs = (1 - 2 * rng.integers(0, 2, size=(cap, n))).astype(np.int8)
    return SignFamily(level.j, cap, True, signs)


# ---------------------------------------------------------------------------
# child placement


def _lattice_bounds(lo, hi, phase, p: int, c: float):
    """Range of lattice indices ``k`` (parity fixed by ``phase``) whose child
    interval ``[pi k/p - c/2p, pi k/p + c/2p]`` fits in ``(lo + TOL, hi - TOL)``."""
    half = c / (2 * p)
    kmin = np.ceil((np.asarray(lo) + TOL + half) * p / math.pi).astype(np.int64)
    kmax = np.floor((np.asarray(hi) - TOL - half) * p / math.pi).astype(np.int64)
    parity = np.where(np.asarray(phase) > 0, 0, 1)
    kmin = kmin + (kmin - parity) % 2
    kmax = kmax - (kmax - parity) % 2
    counts = np.maximum((kmax - kmin) // 2 + 1, 0)
    return kmin, counts


def place_children(parent: Cube, phases, p: int, c: float) -> list[Cube]:
    """Cubes of side ``c/p`` centred where ``cos(p x_s) = phases[s]`` for every
    coordinate, kept only when strictly inside ``parent``."""
    phases = np.asarray(phases)
    lo = np.asarray(parent.corner)
    if p * parent.side < 6 * math.pi * (1 - 1e-12):
        raise ConstructionError("frequency too small: fewer than three periods across the parent")
    kmin, counts = _lattice_bounds(lo, lo + parent.side, phases, p, c)
    if np.any(counts == 0):
        raise ConstructionError("no admissible child cube")
    side = c / p
    grids = np.meshgrid(*[kmin[s] + 2 * np.arange(counts[s]) for s in range(len(lo))], indexing="ij")
    ks = np.stack([g.ravel() for g in grids], axis=1)
    return [
        Cube(i, tuple(float(math.pi * k / p - side / 2) for k in row), side, parent.id)
        for i, row in enumerate(ks)
    ]


def _guaranteed_count(p: int, p_prev: int | Fraction, c: float) -> int:
    """Peaks of a fixed phase that certainly fit strictly inside any parent of side ``c/p_prev``.

    The usable part of a parent interval spans ``(c/pi) (p/p_prev - 1)``
    lattice units; an open interval of length ``lam`` holds at least
    ``ceil(lam/2) - 1`` points of one parity class.
    """
    lam = Fraction(c / math.pi) * (1 - Fraction(1, 10**12)) * (Fraction(p) / Fraction(p_prev) - 1)
    if lam <= 0:
        return 0
    return max(-(-lam.numerator // (2 * lam.denominator)) - 1, 0)


# ---------------------------------------------------------------------------
# frequency selection


def _ceil_exp(log_x: float) -> int:
    if log_x < 36.0:
        return math.ceil(math.exp(log_x))
    with localcontext() as ctx:
        ctx.prec = 40
        ctx.Emax = 10**7
        return int(Decimal(log_x).exp().to_integral_value(rounding=ROUND_CEILING))


def oscillation_floor(j: int, p_prev: int | None, side_prev: float, c: float) -> int:
    """Smallest ``p`` giving three full periods across a level ``j-1`` cube."""
    if j == 1:
        bound = max(3 * c / side_prev, 6 * math.pi / side_prev)
        return max(1, math.ceil(bound * (1 - 1e-12)))
    # p >= (6 pi / c) p_prev, in exact arithmetic on the integer p_prev
    bound = Fraction(6 * math.pi / c) * (1 - Fraction(1, 10**12)) * p_prev
    return -(-bound.numerator // bound.denominator)


def gauge_threshold(j: int, c: float, c3: float, c4: float, d: int) -> float:
    """``log(c4 c3^-j c^-d)``: the level-``j`` lower bound on ``log(h(t) t^-d)``."""
    return math.log(c4) - j * math.log(c3) - d * math.log(c)


def gauge_floor(j: int, c: float, c3: float, c4: float, gauge: GaugeFunction) -> int:
    """Smallest integer ``p`` with ``h(c/p) (c/p)^-d >= c4 c3^-j c^-d``.

    ``gauge`` must have a nonincreasing ratio, so the left side grows with ``p``.
    """
    target = gauge_threshold(j, c, c3, c4, gauge.d)
    log_c = math.log(c)

    def ok(log_p: float) -> bool:
        return gauge.log_ratio(log_c - log_p) >= target

    if ok(0.0):
        return 1
    if not ok(LOG_P_MAX):
        raise FrequencySelectionError(
            f"level {j}: h(t) t^-d >= c4 c3^-j c^-d cannot be met for any admissible frequency "
            f"(gauge {gauge.to_spec()} does not diverge fast enough)"
        )
    lo, hi = 0.0, 1.0
    while not ok(hi):
        lo, hi = hi, min(2 * hi, LOG_P_MAX)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if ok(mid):
            hi = mid
        else:
            lo = mid
    if hi < 52 * math.log(2):
        # exact integer search near the real root
        p = max(1, math.floor(math.exp(lo)))
        while not ok(math.log(p)):
            p += 1
        while p > 1 and ok(math.log(p - 1)):
            p -= 1
        return p
    return _ceil_exp(hi)


def select_frequency(
    j: int,
    p_prev: int | None,
    side_prev: float,
    c: float,
    c3: float,
    c4: float,
    gauge: GaugeFunction | None,
    budget: int = 200,
    accept=None,
):
    """Smallest admissible frequency ``p_j``.

    ``p_j`` must give three periods across a level ``j-1`` cube, meet the gauge
    growth condition (when a gauge is given), and satisfy ``accept(p)``. The
    last condition is retried with enlarged frequencies up to ``budget``
    times. Returns ``(p, accept_result)``.
    """
    p = oscillation_floor(j, p_prev, side_prev, c)
    if gauge is not None:
        p = max(p, gauge_floor(j, c, c3, c4, gauge))
    if accept is None:
        return p, None
    reason = None
    for _ in range(budget + 1):
        outcome = accept(p)
        if outcome.ok:
            return p, outcome
        reason = outcome.reason
        p = max(p + 1, p + p // 20)
    raise FrequencySelectionError(f"level {j}: frequency budget exhausted ({reason})")


# ---------------------------------------------------------------------------
# level building


@dataclass
class _Plan:
    ok: bool
    reason: str = ""
    count: int = 0
    fanout: int = 0
    kmin: np.ndarray | None = None
    counts: np.ndarray | None = None
    explicit: bool = False


@dataclass
class ConstructionResult:
    params: ConstructionParams
    levels: list[Level]
    schedule: list[ScheduledApproximant]
    families: dict[int, SignFamily]
    c: float
    c3: float
    c4: float
    round_truncated: bool = False

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def frequencies(self) -> list[int]:
        return [lv.frequency for lv in self.levels[1:]]

    @property
    def counts(self) -> list[int]:
        return [lv.count for lv in self.levels]

    @property
    def p0(self) -> Fraction:
        """Level-0 stand-in frequency ``c / l_0`` (so ``l_j = c/p_j`` holds for all ``j``)."""
        return Fraction(self.c) / Fraction(self.params.side)

    @property
    def deepest_explicit(self) -> int:
        return max(lv.j for lv in self.levels if lv.explicit)

    def ancestors(self, j_from: int, j_to: int) -> np.ndarray:
        """Index of the level-``j_to`` ancestor of every level-``j_from`` cube."""
        idx = np.arange(self.levels[j_from].count)
        for j in range(j_from, j_to, -1):
            idx = self.levels[j].parents[idx]
        return idx

    def pattern_for(self, entry: ScheduledApproximant) -> SignPattern:
        return self.families[entry.checkpoint_level].pattern(entry.function_id)

    def __eq__(self, other):
        if not isinstance(other, ConstructionResult):
            return NotImplemented
        return (
            self.params == other.params
            and self.levels == other.levels
            and self.schedule == other.schedule
            and self.families == other.families
            and (self.c, self.c3, self.c4, self.round_truncated)
            == (other.c, other.c3, other.c4, other.round_truncated)
        )


def _count_margins_ok(result_levels, p: int, fanout: int, count: int, c3: float, d: int, j: int, p0):
    prev = result_levels[-1]
    p_prev = Fraction(prev.frequency) if prev.frequency is not None else p0
    c3f = Fraction(c3)
    step = count - c3f * (Fraction(p) / p_prev) ** d * prev.count
    total = count - c3f**j * Fraction(p) ** d
    if step < 0:
        return "per-step counting bound N_j >= c3 (p_j/p_{j-1})^d N_{j-1}"
    if total < 0:
        return "counting bound N_j >= c3^j p_j^d"
    return None


def _phases(result_levels, families, checkpoint: int, function_ids, d: int) -> np.ndarray:
    prev = result_levels[-1]
    anc = np.arange(prev.count)
    for j in range(prev.j, checkpoint, -1):
        anc = result_levels[j].parents[anc]
    fam = families[checkpoint]
    return np.stack([fam.signs[function_ids[s]][anc] for s in range(d)], axis=1)


def _plan_level(levels, p: int, c: float, c3: float, params, phases, j: int, p0) -> _Plan:
    prev = levels[-1]
    d = params.d
    if prev.explicit and p <= P_EXPLICIT_MAX:
        lo = prev.corners
        kmin, counts = _lattice_bounds(lo, lo + prev.side, phases, p, c)
        per_parent = np.prod(counts.astype(np.float64), axis=1)
        fanout = int(per_parent.min())
        explicit = fanout * prev.count <= params.max_cubes
    else:
        p_prev = prev.frequency if prev.frequency is not None else p0
        g = _guaranteed_count(p, p_prev, c)
        fanout, kmin, counts, explicit = g**d, None, None, False
    if fanout < 1:
        return _Plan(False, "a parent cube has no admissible child")
    count = fanout * prev.count
    reason = _count_margins_ok(levels, p, fanout, count, c3, d, j, p0)
    if reason:
        return _Plan(False, reason)
    return _Plan(True, count=count, fanout=fanout, kmin=kmin, counts=counts, explicit=explicit)


def _materialize(plan: _Plan, p: int, c: float, d: int):
    n_par = plan.counts.shape[0]
    m = np.arange(plan.fanout, dtype=np.int64)[None, :]
    rem = np.broadcast_to(m, (n_par, plan.fanout)).copy()
    idx = np.empty((n_par, plan.fanout, d), dtype=np.int64)
    for s in range(d - 1, -1, -1):
        radix = plan.counts[:, s][:, None]
        idx[:, :, s] = rem % radix
        rem //= radix
    lattice = (plan.kmin[:, None, :] + 2 * idx).reshape(-1, d)
    parents = np.repeat(np.arange(n_par, dtype=np.int64), plan.fanout)
    side = c / p
    corners = math.pi * lattice / p - 0.5 * side
    return corners, lattice, parents


def build_level(levels, families, checkpoint: int, function_ids, p: int, c: float, c3: float,
                params: ConstructionParams, p0, plan: _Plan | None = None) -> Level:
    """Level ``j = len(levels)`` for frequency ``p``; coordinate ``s`` follows function ``s``."""
    j = len(levels)
    prev = levels[-1]
    phases = _phases(levels, families, checkpoint, function_ids, params.d) if prev.explicit else None
    if plan is None:
        plan = _plan_level(levels, p, c, c3, params, phases, j, p0)
        if not plan.ok:
            raise ConstructionError(plan.reason)
    log_side = math.log(c) - math.log(p)
    side = c / p if p < 1e300 else math.exp(log_side)
    level = Level(j=j, side=side, log_side=log_side, count=plan.count, frequency=p)
    if plan.explicit:
        level.corners, level.lattice, level.parents = _materialize(plan, p, c, params.d)
    return level


def run_construction(params: ConstructionParams) -> ConstructionResult:
    """Build levels ``0..J``, consuming sign functions ``d`` at a time."""
    problem = validate_params(params)
    if problem:
        raise ValueError(problem)
    d = params.d
    c = compute_c(params.epsilon)
    c3 = 0.5 * (c / TWO_PI) ** d
    c4 = c4_constant(d)
    gauge = regularize_gauge(params.gauge) if params.gauge is not None else None
    p0 = Fraction(c) / Fraction(params.side)

    corners = np.asarray(params.corners, dtype=float)
    level0 = Level(
        j=0,
        side=params.side,
        log_side=math.log(params.side),
        count=len(corners),
        checkpoint=True,
        corners=corners,
    )
    levels = [level0]
    families: dict[int, SignFamily] = {}
    schedule: list[ScheduledApproximant] = []
    truncated = False
    queue: list[int] = []
    checkpoint = 0

    for j in range(1, params.depth + 1):
        if not queue:
            checkpoint = j - 1
            levels[-1].checkpoint = True
            fam = enumerate_sign_functions(levels[-1], params.function_cap, params.seed)
            families[checkpoint] = fam
            truncated = truncated or fam.truncated
            queue = list(range(fam.size))
        ids = queue[:d]
        queue = queue[d:]
        ids = ids + list(range(d - len(ids)))  # pad with the head of the list

        prev = levels[-1]
        phases = _phases(levels, families, checkpoint, ids, d) if prev.explicit else None

        def accept(p, _phases=phases, _j=j):
            return _plan_level(levels, p, c, c3, params, _phases, _j, p0)

        p, plan = select_frequency(
            j, prev.frequency, prev.side, c, c3, c4, gauge, params.frequency_budget, accept
        )
        level = build_level(levels, families, checkpoint, ids, p, c, c3, params, p0, plan)
        levels.append(level)
        for s in range(d):
            schedule.append(ScheduledApproximant(j, s + 1, ids[s], p, checkpoint))
        if not queue:
            level.checkpoint = True

    return ConstructionResult(params, levels, schedule, families, c, c3, c4, truncated)


# ---------------------------------------------------------------------------
# checks


def _phase_offsets(p_i: int, lattice: np.ndarray, p_level: int) -> np.ndarray:
    """``p_i * (pi k / p_level) mod 2 pi`` computed from the integers."""
    return math.pi * ((p_i * lattice) % (2 * p_level)) / p_level


def approximation_errors(result: ConstructionResult, entry: ScheduledApproximant, level: int | None = None):
    """Per-cube sup of ``|f - cos(p_j t_s)|`` over the cubes of ``level``."""
    if level is None:
        level = result.deepest_explicit
    if level < entry.level:
        raise ValueError("level must be at least the entry's level")
    lv = result.levels[level]
    if not lv.explicit:
        raise ConstructionError(f"level {level} is count-only")
    signs = result.families[entry.checkpoint_level].signs
    if signs is None:
        raise ConstructionError("sign family is not materialized")
    f = signs[entry.function_id][result.ancestors(level, entry.checkpoint_level)].astype(float)
    s = entry.coordinate - 1
    theta = _phase_offsets(entry.frequency, lv.lattice[:, s], lv.frequency)
    # half-width of the cube's s-projection in phase units
    w = entry.frequency * result.c / (2 * lv.frequency)
    # f = +1 is worst at a trough (theta = pi), f = -1 at a peak (theta = 0)
    target = np.where(f > 0, math.pi, 0.0)
    dist = np.abs((theta - target + math.pi) % TWO_PI - math.pi)
    hits_extreme = dist <= w
    edge = np.maximum(1 - f * np.cos(theta - w), 1 - f * np.cos(theta + w))
    return np.where(hits_extreme, 2.0, edge)


def verify_approximation(result: ConstructionResult, entry: ScheduledApproximant, level: int | None = None) -> float:
    """Max over cubes of the sup-error of ``cos(p_j t_s)`` against the sign function.

    The error on a cube is computed in closed form: on the cube's
    ``s``-projection the cosine is monotone between its nearest extremum and
    either end, so the sup sits at an endpoint unless the interval reaches the
    wrong extremum. ``level`` defaults to the deepest explicit level.
    """
    return float(np.max(approximation_errors(result, entry, level)))


@dataclass
class LevelCheck:
    j: int
    side_law: bool
    oscillation: bool
    nested: bool
    disjoint: bool
    equal_fanout: bool

    @property
    def ok(self) -> bool:
        return self.side_law and self.oscillation and self.nested and self.disjoint and self.equal_fanout


def check_level(result: ConstructionResult, j: int) -> LevelCheck:
    """Geometric invariants of level ``j`` (explicit levels only for geometry)."""
    from scipy.spatial import cKDTree

    lv = result.levels[j]
    side_law = oscillation = True
    if j >= 1:
        side_law = abs(lv.log_side - (math.log(result.c) - math.log(lv.frequency))) <= 1e-12
        if lv.frequency < 1e300:
            side_law = side_law and abs(lv.side - result.c / lv.frequency) <= 1e-12 * lv.side
        prev = result.levels[j - 1]
        log_osc = math.log(lv.frequency) + prev.log_side
        oscillation = log_osc >= math.log(6 * math.pi) + math.log1p(-1e-12)
    nested = disjoint = fanout = True
    if lv.explicit:
        if j >= 1 and result.levels[j - 1].explicit:
            parent = result.levels[j - 1].corners[lv.parents]
            psize = result.levels[j - 1].side
            nested = bool(
                np.all(lv.corners > parent) and np.all(lv.corners + lv.side < parent + psize)
            )
            per_parent = np.bincount(lv.parents, minlength=result.levels[j - 1].count)
            fanout = bool(np.all(per_parent == per_parent[0]))
        if lv.count > 1:
            tree = cKDTree(lv.centers)
            close = tree.query_pairs(lv.side * (1 + 1e-9) + TOL, p=np.inf)
            disjoint = len(close) == 0
    return LevelCheck(j, side_law, oscillation, nested, disjoint, fanout)


def with_depth(params: ConstructionParams, depth: int) -> ConstructionParams:
    return replace(params, depth=depth)


__all__ = [
    "ConstructionError",
    "ConstructionParams",
    "ConstructionResult",
    "Cube",
    "FrequencySelectionError",
    "Level",
    "LevelCheck",
    "ScheduledApproximant",
    "SignFamily",
    "SignPattern",
    "approximation_errors",
    "build_level",
    "check_level",
    "compute_c",
    "enumerate_sign_functions",
    "place_children",
    "run_construction",
    "select_frequency",
    "validate_params",
    "verify_approximation",
]
