"""Product sets are never Helson: the unitary-weight measure on an N x N grid.

Weights are ``u_jk = N^-1/2 exp(2 pi i jk / N)`` for ``j, k = 1..N`` placed at
``(x1_j, x2_k)``. Its total variation is ``N^{3/2}`` while every Fourier
coefficient has modulus at most ``N / (4 pi^2)``, so the Helson ratio is at
least ``4 pi^2 sqrt(N)`` and no uniform constant exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import AtomicMeasure, FourierBox, sup_fourier_box, total_variation

TWO_PI = 2.0 * math.pi
FOUR_PI2 = 4.0 * math.pi**2


@dataclass(frozen=True)
class ProductMeasureSpec:
    N: int
    X1: tuple[float, ...] | None = None
    X2: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        for axis in (self.axis(1), self.axis(2)):
            if len(axis) != self.N:
                raise ValueError("each axis needs exactly N points")
            if np.any(axis < 0) or np.any(axis >= TWO_PI):
                raise ValueError("points must lie in [0, 2pi)")
            if len(np.unique(axis)) != self.N:
                raise ValueError("points on an axis must be distinct")

    def axis(self, which: int) -> np.ndarray:
        pts = self.X1 if which == 1 else self.X2
        if pts is None:
            # x^j = 2 pi j / N for j = 1..N, reduced to [0, 2 pi)
            return (TWO_PI * np.arange(1, self.N + 1) / self.N) % TWO_PI
        return np.asarray(pts, dtype=float)

    def grid_indices(self, which: int) -> np.ndarray | None:
        """Integers ``m`` with ``x = 2 pi m / N``, or ``None`` off the rational grid."""
        x = self.axis(which)
        m = np.rint(x * self.N / TWO_PI)
        if np.all(np.abs(m * TWO_PI / self.N - x) <= 1e-12):
            return m.astype(np.int64) % self.N
        return None

    @property
    def on_grid(self) -> bool:
        return self.grid_indices(1) is not None and self.grid_indices(2) is not None


def unitary_matrix(N: int) -> np.ndarray:
    """``U[j-1, k-1] = N^-1/2 exp(2 pi i jk / N)``."""
    j = np.arange(1, N + 1)
    # reduce jk mod N in integers before forming the phase
    return np.exp(2j * np.pi * (np.outer(j, j) % N) / N) / math.sqrt(N)


def unitarity_residual(N: int) -> float:
    U = unitary_matrix(N)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(N))))


def build_unitary_measure(spec: ProductMeasureSpec) -> AtomicMeasure:
    U = unitary_matrix(spec.N)
    x1, x2 = spec.axis(1), spec.axis(2)
    pts = np.stack(np.meshgrid(x1, x2, indexing="ij"), axis=-1).reshape(-1, 2)
    return AtomicMeasure(pts, U.ravel())


def exact_sup_grid(spec: ProductMeasureSpec) -> float:
    """Exact ``sup_{lambda in Z^2} |mu_hat(lambda)|`` for grid-supported specs.

    On the rational grid ``mu_hat`` is ``N``-periodic in each coordinate, so one
    period, obtained with a 2-D FFT, covers all of ``Z^2``.
    """
    m1, m2 = spec.grid_indices(1), spec.grid_indices(2)
    if m1 is None or m2 is None:
        raise ValueError("points are not on the grid 2 pi m / N; use sup_fourier_box instead")
    A = np.zeros((spec.N, spec.N), dtype=complex)
    A[np.ix_(m1, m2)] = unitary_matrix(spec.N)
    return float(np.max(np.abs(np.fft.fft2(A)))) / FOUR_PI2


def brute_force_sup_grid(spec: ProductMeasureSpec) -> float:
    """Direct DFT sum over one period ``lambda in {0..N-1}^2``; slow reference."""
    N = spec.N
    U = unitary_matrix(N)
    x1, x2 = spec.axis(1), spec.axis(2)
    best = 0.0
    for l1 in range(N):
        a1 = np.exp(-1j * l1 * x1)
        for l2 in range(N):
            a2 = np.exp(-1j * l2 * x2)
            best = max(best, abs(a1 @ U @ a2))
    return best / FOUR_PI2


@dataclass(frozen=True)
class GrowthRow:
    N: int
    total_variation: float
    sup: float
    ratio: float
    floor: float  # 4 pi^2 sqrt(N)


def growth_demo(Ns, K: int | None = None, specs=None) -> list[GrowthRow]:
    """Helson ratio of the unitary measure for each ``N``.

    Grid specs use :func:`exact_sup_grid`; others fall back to a box of radius
    ``K`` (which can only overestimate the ratio).
    """
    rows = []
    specs = specs or [ProductMeasureSpec(int(N)) for N in Ns]
    for spec in specs:
        mu = build_unitary_measure(spec)
        tv = total_variation(mu)
        if spec.on_grid:
            sup = exact_sup_grid(spec)
        else:
            if K is None:
                raise ValueError("off-grid specs need a Fourier box radius K")
            sup, _ = sup_fourier_box(mu, FourierBox(K))
        rows.append(GrowthRow(spec.N, tv, sup, tv / sup, FOUR_PI2 * math.sqrt(spec.N)))
    return rows
