"""Acceptance criteria, each at its stated tolerance.

A per-criterion PASS/FAIL line is printed in the terminal summary.
"""
import math
import time

import numpy as np
import pytest

from witsext import asymptotic, finite_lb, scalar_ub, semidet
from witsext.model import ProblemParams, mmse_only_strategy
from witsext.scalar_ub import binning_strategy, coarse_fine_expression, coarse_fine_strategy
from witsext.simulate import SimConfig, run
from witsext.special_fns import psi

from oracles import chi_tail_quad

GRID = np.geomspace(1e-2, 1e2, 60)
RATES = (0, 1, 2, 3, 4, 5)
SLACK = 1e-6
MC = SimConfig(n_samples=1_000_000, seed=20240)


def grid_points(rates=RATES):
    for r in rates:
        for k in GRID:
            for s in GRID:
                yield ProblemParams(float(k * k), float(s * s), float(r))


@pytest.fixture(scope="module")
def finite_table():
    """(params, finite lower, asymptotic lower, scalar upper) on the full grid."""
    rows = []
    for p in grid_points():
        rows.append((p, finite_lb.optimized_lower_bound(p).value,
                     asymptotic.lower_bound(p)[0], scalar_ub.total_upper(p).total))
    return rows


@pytest.mark.criterion(1)
def test_asymptotic_ratio_below_eight_and_case_ceilings():
    start = time.perf_counter()
    worst, cases = 0.0, {}
    for p in grid_points():
        ratio, case = asymptotic.ratio_certificate(p, slack=SLACK)
        worst = max(worst, ratio)
        cases[case] = cases.get(case, 0) + 1
    elapsed = time.perf_counter() - start
    print(f"max ratio {worst:.6f}, cases {cases}, {elapsed:.1f}s")
    assert worst < 8.0 + SLACK
    assert elapsed < 30.0


@pytest.mark.criterion(2)
def test_quantization_power_closed_forms():
    assert asymptotic.quantization_power(4.0, 0.0) == 1.0
    for r in range(6):
        for s2 in np.geomspace(1 + 1e-6, 1e6, 1000):
            assert asymptotic.quantization_power(s2, r) <= 2.0 * 2.0 ** (-2 * r)


@pytest.mark.criterion(3)
def test_finite_bound_at_least_asymptotic(finite_table):
    gaps = [fin - asy for _, fin, asy, _ in finite_table]
    assert min(gaps) >= -1e-9


@pytest.mark.criterion(3)
def test_sandwich_lower_below_scalar_upper(finite_table):
    bad = [(p, lo, up) for p, lo, _, up in finite_table if not lo <= up]
    assert not bad


@pytest.mark.criterion(4)
def test_scalar_ratio_finite_and_increasing_in_rate(finite_table):
    worst = {}
    for p, lo, _, up in finite_table:
        if p.r_ex <= 4:
            worst[p.r_ex] = max(worst.get(p.r_ex, 0.0), up / lo)
    series = [worst[float(r)] for r in range(5)]
    print("max scalar ratio by rate", series)
    assert all(math.isfinite(v) for v in series)
    assert all(b > a for a, b in zip(series, series[1:]))


@pytest.mark.criterion(5)
@pytest.mark.parametrize("p", [0.25, 1.0])
@pytest.mark.parametrize("r", [0, 1, 2])
def test_binning_stage2_matches_truncated_moment(p, r):
    est = run(ProblemParams(1.0, 1.0, r), binning_strategy(p, r), MC)
    target = psi(3, 2.0 ** r * math.sqrt(p))
    assert abs(est.mean_stage2 - target) <= 3 * est.stderr_stage2, (est.mean_stage2, target)


@pytest.mark.criterion(5)
@pytest.mark.parametrize("s2", [0.5, 1.0, 4.0])
def test_mmse_only_matches_closed_form(s2):
    est = run(ProblemParams(1.0, s2), mmse_only_strategy(s2), MC)
    assert abs(est.mean_stage2 - s2 / (s2 + 1)) <= 3 * est.stderr_stage2


@pytest.mark.criterion(6)
@pytest.mark.parametrize("a", [2.0, 4.0])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_coarse_fine_below_analytic_bound(a, r):
    est = run(ProblemParams(1.0, 25.0, r), coarse_fine_strategy(a, r), MC)
    assert est.mean_stage2 <= float(coarse_fine_expression(a, r)) + 3 * est.stderr_stage2


@pytest.mark.criterion(7)
def test_bit_model_optimal_equals_brute_force():
    start = time.perf_counter()
    checked = 0
    for n in range(1, 9):
        for top in range(-3, 5):
            for cap in range(5):
                params = semidet.SemidetParams(2.0 ** top, cap, n)
                lo = params.position(n)
                for budget in [0.0] + [2.0 ** b for b in range(lo - 1, top + 2)]:
                    assert semidet.optimal_tradeoff(params, budget) == \
                        semidet.brute_force_optimal(params, budget), (params, budget)
                    checked += 1
    print(f"{checked} configurations, {time.perf_counter() - start:.1f}s")
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(7)
def test_bit_model_reference_instances():
    quarter, eighth = semidet.parse_binary("0.01"), semidet.parse_binary("0.001")
    # b1 b2 b3 . b4 b5, two bits of external capacity
    a = semidet.SemidetParams(4.0, 2, 5)
    assert semidet.optimal_strategy(a, quarter) == semidet.BitStrategy({3, 4}, {5})
    assert semidet.optimal_tradeoff(a, quarter) == 0.0
    assert semidet.optimal_tradeoff(a, quarter / 2) == quarter
    # . b1 b2 b3 b4, state power below the noise
    b = semidet.SemidetParams(0.5, 2, 4)
    assert semidet.optimal_strategy(b, eighth) == semidet.BitStrategy({1, 2}, {3, 4})
    assert semidet.optimal_tradeoff(b, eighth) == 0.0
    assert semidet.optimal_tradeoff(b, eighth / 2) == eighth
    for params, t in ((a, quarter), (b, eighth)):
        for budget in (t / 2, t):
            assert semidet.brute_force_optimal(params, budget) == semidet.optimal_tradeoff(params, budget)


@pytest.mark.criterion(8)
def test_gaussian_link_ratio_diverges():
    ratios = []
    for s2 in (1.0, 10.0, 1e2, 1e3, 1e4):
        p = ProblemParams(1.0, s2, p_ex=s2)
        ratios.append(asymptotic.gauss_ext_baseline_cost(p) / asymptotic.gauss_ext_binning_cost(p))
    print("baseline/binning", ratios)
    assert all(b >= a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > 10.0


@pytest.mark.criterion(9)
def test_psi_matches_quadrature():
    rng = np.random.default_rng(9)
    ms = rng.integers(1, 33, size=1000)
    rs = rng.uniform(0, 1, size=1000) * 10 * np.sqrt(ms)
    worst = max(abs(psi(int(m), float(r)) - chi_tail_quad(int(m), float(r))) for m, r in zip(ms, rs))
    print(f"max |psi - quadrature| = {worst:.3g}")
    assert worst <= 1e-10


@pytest.mark.criterion(9)
def test_psi_two_dimensions_closed_form():
    for r in np.linspace(0, 40, 2001):
        assert abs(psi(2, r) - math.exp(-r * r / 2)) <= 1e-12
