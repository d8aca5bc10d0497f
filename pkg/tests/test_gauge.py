import math

import numpy as np
import pytest

from helson import GaugeFunction, c4_constant, divergence_check, parse_gauge, regularize_gauge

TABLES = [
    # ratio h/t: 3, 1.75, 3, 2 at the knots; the bump between 0.2 and 0.3 must be flattened
    [(0.1, 0.3), (0.2, 0.35), (0.3, 0.9), (0.5, 1.0)],
    [(0.05, 0.02), (0.1, 0.2), (0.4, 0.25), (0.6, 0.9), (1.0, 1.0)],
    [(0.2, 0.1), (0.25, 0.5), (0.5, 0.55), (0.7, 0.6), (0.9, 2.0)],
]


def dense_inf_oracle(knots, d, t_eval, n=20001):
    """``t^d min_{tau <= t} h(tau)/tau^d`` with ``tau`` on a dense grid plus knots and ``t``."""
    ts = np.array([0.0] + [k[0] for k in knots])
    hs = np.array([0.0] + [k[1] for k in knots])
    base = np.concatenate([np.linspace(1e-6, ts[-1], n), ts[1:]])
    out = []
    for t in t_eval:
        tau = np.concatenate([base[base <= t], [t]])
        ratio = np.interp(tau, ts, hs) / tau**d
        out.append(t**d * ratio.min())
    return np.array(out)


# -- c4 ---------------------------------------------------------------------------


@pytest.mark.parametrize("d,expected", [(1, 1.0), (2, math.pi / 4), (3, math.pi / 6)])
def test_c4(d, expected):
    assert c4_constant(d) == pytest.approx(expected, rel=1e-14)


def test_c4_rejects_zero():
    with pytest.raises(ValueError):
        c4_constant(0)


# -- construction and evaluation -------------------------------------------------------


def test_power_alpha_range():
    with pytest.raises(ValueError):
        GaugeFunction.power(2.5, 2)
    with pytest.raises(ValueError):
        GaugeFunction.power(0.0, 1)


def test_table_validation():
    with pytest.raises(ValueError):
        GaugeFunction.table([(0.1, 0.2), (0.05, 0.3)], 1)
    with pytest.raises(ValueError):
        GaugeFunction.table([(0.1, 0.2), (0.2, 0.1)], 1)


def test_power_log_values():
    g = GaugeFunction.power_log(2)
    assert g(0.0) == 0.0
    assert g(0.1) == pytest.approx(0.01 * math.log(10.0))
    assert g.t_max == pytest.approx(math.exp(-0.5))


@pytest.mark.parametrize("g", [GaugeFunction.power(0.5, 1), GaugeFunction.power_log(2), GaugeFunction.table(TABLES[0], 1)])
def test_log_ratio_matches_direct(g):
    for t in (0.01, 0.05, 0.15, 0.3):
        assert g.log_ratio(math.log(t)) == pytest.approx(math.log(g(t) / t**g.d), rel=1e-12)


def test_log_ratio_far_below_double_range():
    g = GaugeFunction.power_log(1)
    assert g.log_ratio(-1e5) == pytest.approx(math.log(1e5))


@pytest.mark.parametrize("spec", ["power:0.5", "powerlog", "table:0.0,0.0;0.1,0.3;0.5,1.0", "regtable:0.0,0.0;0.1,0.3;0.5,1.0"])
def test_parse_round_trip(spec):
    g = parse_gauge(spec, 1)
    assert parse_gauge(g.to_spec(), 1) == g


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_gauge("cubic", 1)


# -- regularization ------------------------------------------------------------------


def test_regularize_power_unchanged():
    g = GaugeFunction.power(0.5, 1)
    assert regularize_gauge(g) is g
    h = GaugeFunction.power(2.0, 2)
    assert regularize_gauge(h) is h


@pytest.mark.parametrize("knots", TABLES)
def test_regularize_matches_dense_oracle(knots):
    g = GaugeFunction.table(knots, 1)
    h1 = regularize_gauge(g)
    t = np.unique(np.concatenate([np.linspace(0.001, knots[-1][0], 997), [k[0] for k in knots]]))
    assert np.max(np.abs(h1(t) - dense_inf_oracle(knots, 1, t))) <= 1e-12


def test_regularize_flattens_bump():
    g = GaugeFunction.table(TABLES[0], 1)
    h1 = regularize_gauge(g)
    assert h1(0.3) == pytest.approx(1.75 * 0.3, rel=1e-14)
    assert g(0.3) == pytest.approx(0.9)


def test_regularize_d2_table():
    knots = [(0.1, 0.05), (0.2, 0.06), (0.4, 0.5), (0.8, 0.6)]
    g = GaugeFunction.table(knots, 2)
    h1 = regularize_gauge(g)
    t = np.linspace(0.01, 0.8, 2001)
    assert np.all(h1(t) <= g(t) + 1e-15)
    ratio = h1.ratio(t)
    assert np.all(np.diff(ratio) <= 1e-12 * ratio[1:])
    # interior minimum of (a + b tau)/tau^2 on the third segment is resolved exactly
    oracle = dense_inf_oracle(knots, 2, t, n=200001)
    assert np.max(np.abs(h1(t) - oracle)) <= 1e-9


# -- divergence ----------------------------------------------------------------------


@pytest.mark.parametrize("d", [1, 2, 3])
def test_divergence_verdicts(d):
    assert divergence_check(GaugeFunction.power(d - 0.5, d)).diverging is True
    assert divergence_check(GaugeFunction.power_log(d)).diverging is True
    assert divergence_check(GaugeFunction.power(d, d)).diverging is False


def test_divergence_ratios():
    rep = divergence_check(GaugeFunction.power(0.5, 1), t_grid=[1e-2, 1e-4, 1e-6])
    assert rep.ratios == pytest.approx([10.0, 100.0, 1000.0], rel=1e-12)


def test_divergence_rejects_increasing_grid():
    with pytest.raises(ValueError):
        divergence_check(GaugeFunction.power(0.5, 1), t_grid=[1e-3, 1e-2])
