"""Atomic measures on the torus and their Fourier coefficients.

Coefficients follow the normalisation
``mu_hat(k) = (2 pi)^-d * sum_a w_a exp(-i (k, x_a))``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .construction import ConstructionError, ConstructionResult, ScheduledApproximant, SignPattern

TWO_PI = 2.0 * math.pi
_CHUNK = 1 << 22  # lattice-points x atoms per block


class UndefinedRatioError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finite signed/complex combination of point masses on ``T^d``.

    Points are reduced to ``[0, 2 pi)`` and coincident atoms are merged.
    """

    points: np.ndarray  # (n, d) float
    weights: np.ndarray  # (n,) complex

    def __init__(self, points, weights):
        pts = np.atleast_2d(np.asarray(points, dtype=float)) % TWO_PI
        w = np.asarray(weights, dtype=complex).ravel()
        if pts.shape[0] != w.shape[0]:
            raise ValueError("points and weights differ in length")
        if pts.shape[0] == 0:
            raise ValueError("a measure needs at least one atom")
        uniq, inverse = np.unique(pts, axis=0, return_inverse=True)
        merged = np.zeros(len(uniq), dtype=complex)
        np.add.at(merged, inverse.ravel(), w)
        object.__setattr__(self, "points", uniq)
        object.__setattr__(self, "weights", merged)

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.weights.imag == 0))

    def translate(self, tau) -> AtomicMeasure:
        return AtomicMeasure(self.points + np.asarray(tau, dtype=float), self.weights)


@dataclass(frozen=True)
class FourierBox:
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("Fourier box radius K must be >= 1")

    def lattice(self, d: int) -> np.ndarray:
        """All ``k`` with ``|k|_inf <= K`` in lexicographic order."""
        r = range(-self.K, self.K + 1)
        return np.array(list(itertools.product(r, repeat=d)), dtype=np.int64)


def fourier_coefficients(mu: AtomicMeasure, ks) -> np.ndarray:
    ks = np.atleast_2d(np.asarray(ks, dtype=float))
    if ks.shape[1] != mu.d:
        raise ValueError("frequency dimension differs from the measure's")
    out = np.empty(len(ks), dtype=complex)
    step = max(1, _CHUNK // len(mu.weights))
    for start in range(0, len(ks), step):
        phase = ks[start:start + step] @ mu.points.T
        out[start:start + step] = np.exp(-1j * phase) @ mu.weights
    return out / TWO_PI**mu.d


def fourier_coefficient(mu: AtomicMeasure, k) -> complex:
    return complex(fourier_coefficients(mu, [k])[0])


def total_variation(mu: AtomicMeasure) -> float:
    return float(np.sum(np.abs(mu.weights)))


def sup_fourier_box(mu: AtomicMeasure, box: FourierBox, rtol: float = 1e-12):
    """``max |mu_hat(k)|`` over ``|k|_inf <= K`` and the lexicographically first argmax.

    Values within ``rtol`` of the maximum count as ties.
    """
    ks = box.lattice(mu.d)
    vals = np.abs(fourier_coefficients(mu, ks))
    top = float(vals.max())
    first = int(np.argmax(vals >= top * (1 - rtol)))
    return top, tuple(int(x) for x in ks[first])


def helson_ratio(mu: AtomicMeasure, box: FourierBox) -> float:
    """``||mu|| / max_{|k|_inf <= K} |mu_hat(k)|``.

    The box sup is a lower bound for the sup over all of ``Z^d``, so the value
    is an upper bound for the true ratio of ``mu``.
    """
    tv = total_variation(mu)
    sup, _ = sup_fourier_box(mu, box)
    if sup <= 1e-13 * tv / TWO_PI**mu.d:
        raise UndefinedRatioError(f"Fourier transform vanishes on the box K={box.K}; try a larger K")
    return tv / sup


# ---------------------------------------------------------------------------
# measures carried by the construction


def _explicit(result: ConstructionResult, J: int):
    if J > result.depth:
        raise ValueError(f"level {J} exceeds the construction depth {result.depth}")
    lv = result.levels[J]
    if not lv.explicit:
        raise ConstructionError(f"level {J} is count-only; no atoms available")
    return lv


def natural_measure(result: ConstructionResult, J: int) -> AtomicMeasure:
    """Equal mass ``1/N_J`` at the centre of every level-``J`` cube."""
    lv = _explicit(result, J)
    return AtomicMeasure(lv.centers, np.full(lv.count, 1.0 / lv.count))


def sign_pattern_measure(result: ConstructionResult, f: SignPattern, J: int) -> AtomicMeasure:
    """Natural measure at level ``J`` weighted by ``f`` on each cube's checkpoint ancestor."""
    if f.checkpoint_level > J:
        raise ValueError("sign pattern lives below the requested level")
    lv = _explicit(result, J)
    signs = np.asarray(f.signs, dtype=float)
    if len(signs) != result.levels[f.checkpoint_level].count:
        raise ValueError("sign pattern length differs from the checkpoint cube count")
    anc = result.ancestors(J, f.checkpoint_level)
    return AtomicMeasure(lv.centers, signs[anc] / lv.count)


def anchor_check(result: ConstructionResult, entry: ScheduledApproximant, J: int) -> float:
    """``Re mu_hat(p_j e_s)`` for the sign-pattern measure of ``entry``'s function.

    Every atom satisfies ``sign * cos(p_j x_s) >= 1 - eps``, so the value is at
    least ``(1 - eps) / (2 pi)^d``; see :func:`anchor_bound`.
    """
    if J < entry.level:
        raise ValueError("J must be at least the entry's level")
    mu = sign_pattern_measure(result, result.pattern_for(entry), J)
    k = np.zeros(result.d, dtype=np.int64)
    k[entry.coordinate - 1] = entry.frequency
    return fourier_coefficient(mu, k).real


def anchor_bound(result: ConstructionResult) -> float:
    return (1.0 - result.params.epsilon) / TWO_PI**result.d
