"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""

import math
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from configs import EPS, gauge_result, suite_params, suite_result  # noqa: E402
from test_gauge import TABLES, dense_inf_oracle  # noqa: E402

from helson import (  # noqa: E402
    FourierBox,
    GaugeFunction,
    anchor_check,
    regularize_gauge,
    run_construction,
    sup_fourier_box,
    verify_approximation,
)
from helson import serialize  # noqa: E402
from helson.construction import check_level  # noqa: E402
from helson.counterexample import (  # noqa: E402
    ProductMeasureSpec,
    brute_force_sup_grid,
    build_unitary_measure,
    exact_sup_grid,
    growth_demo,
    unitarity_residual,
)
from helson.hausdorff import (  # noqa: E402
    convergence_gaps,
    mass_bound_sample,
    verify_count_bound,
    verify_gauge_bound,
)
from helson.measures import anchor_bound  # noqa: E402

FOUR_PI2 = 4 * math.pi**2
# the own-level error is 1 - cos(c/2) = eps up to rounding
ROUNDING = 1e-12

RESULTS: dict[int, tuple[bool, str]] = {}


def _report(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {detail}")
    assert ok, detail


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for d in (1, 2):
        r = run_construction(suite_params(d))
        bad += [(d, j) for j in range(r.depth + 1) if not check_level(r, j).ok]
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 5.0, f"construction checks failing at {bad or 'none'}; {elapsed:.2f}s (limit 5s)"


def criterion_2():
    worst, closed, own = 0.0, abs(1 - math.cos(suite_result(1).c / 2) - EPS), 0.0
    for d in (1, 2):
        r = suite_result(d)
        for e in r.schedule:
            worst = max(worst, verify_approximation(r, e) - EPS)
            own = max(own, abs(verify_approximation(r, e, level=e.level) - EPS))
    ok = worst <= ROUNDING and closed <= 1e-12 and own <= 1e-12
    return ok, f"max(error - eps) = {worst:.3g}; |1 - cos(c/2) - eps| = {closed:.3g}; own-level |error - eps| = {own:.3g}"


def criterion_3():
    low, n = math.inf, 0
    for d in (1, 2):
        r = suite_result(d)
        bound = anchor_bound(r)
        for e in r.schedule:
            for J in range(e.level, 4):
                low = min(low, anchor_check(r, e, J) - bound)
                n += 1
    return low >= -1e-9, f"{n} anchors, min(value - (1-eps)/(2pi)^d) = {low:.4g}"


def criterion_4():
    results = [suite_result(1), suite_result(2)] + [gauge_result(d, k) for d in (1, 2) for k in ("log", "half")]
    negative = 0
    c3_ok = True
    for r in results:
        c3_ok &= math.isclose(r.c3, 0.5 * (r.c / (2 * math.pi)) ** r.d, rel_tol=1e-15)
        negative += sum(not m.ok for m in verify_count_bound(r))
    return negative == 0 and c3_ok, f"{negative} negative margins over {len(results)} constructions; c3 formula {c3_ok}"


def criterion_5():
    failures, control = [], []
    for d in (1, 2):
        for kind in ("log", "half"):
            r = gauge_result(d, kind)
            failures += [(d, kind, m.j) for m in verify_gauge_bound(r, r.params.gauge) if not m.ok]
            flat = verify_gauge_bound(r, GaugeFunction.power(float(d), d))
            control.append(all(not m.ok for m in flat if m.j >= 2))
    ok = not failures and all(control)
    return ok, f"gauge-bound failures {failures or 'none'}; t^d control fails at every j >= 2: {all(control)}"


def criterion_6():
    t0 = time.perf_counter()
    reports = {d: mass_bound_sample(suite_result(d), 3, trials=1000, seed=0) for d in (1, 2)}
    elapsed = time.perf_counter() - t0
    ok = all(rep.violations == 0 for rep in reports.values()) and elapsed < 10.0
    detail = "; ".join(f"d={d}: {rep.violations} violations (worst ratio {rep.worst_ratio:.3f})" for d, rep in reports.items())
    return ok, f"{detail}; {elapsed:.2f}s (limit 10s)"


def criterion_7():
    Ns = (1, 2, 4, 8)
    rows = growth_demo(Ns)
    rel = max(abs(r.ratio / (FOUR_PI2 * r.N) - 1) for r in rows)
    brute = max(
        abs(brute_force_sup_grid(ProductMeasureSpec(N)) - math.sqrt(N) / FOUR_PI2) * FOUR_PI2 / math.sqrt(N) for N in Ns
    )
    floor = all(r.ratio >= r.floor for r in rows)
    resid = max(unitarity_residual(N) for N in Ns)
    ok = rel <= 1e-9 and brute <= 1e-9 and floor and resid <= 1e-12
    return ok, f"ratio rel err {rel:.2g}; brute-force rel err {brute:.2g}; floor {floor}; unitarity {resid:.2g}"


def criterion_8():
    worst = -math.inf
    for d in (1, 2):
        r = suite_result(d)
        for J in (1, 2):
            gaps, bound = convergence_gaps(r, J, K=20)
            # 1e-12 absorbs summation rounding at k = 0, where the bound is 0
            worst = max(worst, float(np.max(gaps - bound)))
    return worst <= 1e-12, f"max(gap - bound) = {worst:.3g}"


def criterion_9():
    box_err = 0.0
    for N in (1, 2, 4, 8):
        spec = ProductMeasureSpec(N)
        box, _ = sup_fourier_box(build_unitary_measure(spec), FourierBox(N))
        box_err = max(box_err, abs(box - exact_sup_grid(spec)))
    reg_err = 0.0
    for knots in TABLES:
        h1 = regularize_gauge(GaugeFunction.table(knots, 1))
        t = np.unique(np.concatenate([np.linspace(0.001, knots[-1][0], 997), [k[0] for k in knots]]))
        reg_err = max(reg_err, float(np.max(np.abs(h1(t) - dense_inf_oracle(knots, 1, t)))))
    ok = box_err <= 1e-12 and reg_err <= 1e-12
    return ok, f"box vs periodic sup {box_err:.3g}; regularization vs oracle {reg_err:.3g}"


def criterion_10():
    same, loaded = True, True
    with tempfile.TemporaryDirectory() as tmp:
        for d in (1, 2):
            a = run_construction(suite_params(d))
            b = run_construction(suite_params(d))
            same &= serialize.dumps_result(a) == serialize.dumps_result(b)
            path = Path(tmp) / f"r{d}.json"
            serialize.save_result(a, path)
            loaded &= serialize.load_result(path) == a
    return same and loaded, f"identical JSON {same}; load-after-save equal {loaded}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def test_criterion_1_construction_suite():
    _report(1, *criterion_1())


def test_criterion_2_approximation_certificates():
    _report(2, *criterion_2())


def test_criterion_3_anchor():
    _report(3, *criterion_3())


def test_criterion_4_counting_bound():
    _report(4, *criterion_4())


def test_criterion_5_gauge_bound():
    _report(5, *criterion_5())


def test_criterion_6_mass_distribution():
    _report(6, *criterion_6())


def test_criterion_7_product_grid():
    _report(7, *criterion_7())


def test_criterion_8_fourier_convergence():
    _report(8, *criterion_8())


def test_criterion_9_oracle_equivalence():
    _report(9, *criterion_9())


def test_criterion_10_determinism_round_trip():
    _report(10, *criterion_10())


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {detail}")
    sys.exit(1 if failed else 0)
