import math

import numpy as np
import pytest

from helson import FourierBox, helson_ratio, sup_fourier_box, total_variation
from helson.counterexample import (
    ProductMeasureSpec,
    brute_force_sup_grid,
    build_unitary_measure,
    exact_sup_grid,
    growth_demo,
    unitarity_residual,
    unitary_matrix,
)

FOUR_PI2 = 4 * math.pi**2


def test_n1_single_unit_atom():
    mu = build_unitary_measure(ProductMeasureSpec(1))
    assert mu.weights.tolist() == [1.0]
    assert total_variation(mu) == 1.0
    assert exact_sup_grid(ProductMeasureSpec(1)) == pytest.approx(1 / FOUR_PI2, rel=1e-15)


def test_n2_matrix():
    U = unitary_matrix(2)
    assert np.allclose(U, np.array([[-1, 1], [1, 1]]) / math.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 8, 16, 33])
def test_total_variation_and_unitarity(N):
    mu = build_unitary_measure(ProductMeasureSpec(N))
    assert total_variation(mu) == pytest.approx(N**1.5, rel=1e-12)
    assert unitarity_residual(N) <= 1e-12


@pytest.mark.parametrize("N,expected", [(2, math.sqrt(2) / FOUR_PI2), (4, 1 / (2 * math.pi**2))])
def test_exact_sup_closed_form(N, expected):
    assert exact_sup_grid(ProductMeasureSpec(N)) == pytest.approx(expected, rel=1e-12)
    assert brute_force_sup_grid(ProductMeasureSpec(N)) == pytest.approx(expected, rel=1e-12)


def test_modulus_constant_over_period():
    N = 6
    A = np.zeros((N, N), dtype=complex)
    A[np.ix_(np.arange(1, N + 1) % N, np.arange(1, N + 1) % N)] = unitary_matrix(N)
    vals = np.abs(np.fft.fft2(A))
    assert np.allclose(vals, math.sqrt(N), rtol=1e-12)


def test_index_shift_changes_only_phases():
    # j, k = 0..N-1 multiplies every weight by a unimodular factor
    N = 7
    j = np.arange(N)
    shifted = np.exp(2j * np.pi * np.outer(j, j) / N) / math.sqrt(N)
    U = unitary_matrix(N)
    assert np.allclose(np.abs(shifted), np.abs(U), rtol=0, atol=1e-15)
    assert np.allclose(shifted.conj().T @ shifted, np.eye(N), atol=1e-12)


def test_off_grid_refused():
    spec = ProductMeasureSpec(2, X1=(0.1, 1.0), X2=(0.2, 2.0))
    assert not spec.on_grid
    with pytest.raises(ValueError, match="sup_fourier_box"):
        exact_sup_grid(spec)


def test_spec_validation():
    with pytest.raises(ValueError):
        ProductMeasureSpec(0)
    with pytest.raises(ValueError):
        ProductMeasureSpec(2, X1=(1.0, 1.0), X2=(0.0, 1.0))
    with pytest.raises(ValueError):
        ProductMeasureSpec(2, X1=(1.0, 7.0), X2=(0.0, 1.0))


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8])
def test_box_sup_agrees_with_periodic_sup(N):
    spec = ProductMeasureSpec(N)
    box, _ = sup_fourier_box(build_unitary_measure(spec), FourierBox(N))
    assert box == pytest.approx(exact_sup_grid(spec), abs=1e-12)


def test_operator_norm_bound_off_grid():
    rng = np.random.default_rng(3)
    N = 5
    spec = ProductMeasureSpec(N, X1=tuple(rng.random(N) * 6), X2=tuple(rng.random(N) * 6))
    sup, _ = sup_fourier_box(build_unitary_measure(spec), FourierBox(12))
    assert sup <= N / FOUR_PI2 * (1 + 1e-12)


def test_growth_table():
    rows = growth_demo([1, 2, 4, 8])
    assert [r.ratio for r in rows] == pytest.approx([FOUR_PI2 * N for N in (1, 2, 4, 8)], rel=1e-9)
    assert rows[-1].ratio == pytest.approx(315.83, abs=0.01)
    assert all(r.ratio >= r.floor for r in rows)
    assert all(a.ratio < b.ratio for a, b in zip(rows, rows[1:]))


def test_growth_off_grid_needs_k():
    spec = ProductMeasureSpec(2, X1=(0.1, 1.0), X2=(0.2, 2.0))
    with pytest.raises(ValueError):
        growth_demo([], specs=[spec])
    row = growth_demo([], K=4, specs=[spec])[0]
    assert row.ratio >= row.floor
    assert row.ratio == pytest.approx(helson_ratio(build_unitary_measure(spec), FourierBox(4)))
