import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from witsext import scalar_ub as su
from witsext.model import ProblemParams, evaluate_cost
from witsext.special_fns import psi

# frozen from oracles.coarse_fine_grid(3): a in (1, 20], step 1e-4
COARSE_FINE_R3 = 0.45464385400875273
COARSE_FINE_R3_A = 5.1645


def test_binning_cost_limits():
    cost, p = su.binning_cost(1e-6, 0.0, restrict=False)
    assert cost < 1e-3 and p > 1.0
    # with no external link the rate plays no role
    assert su.binning_cost(1.0, 0.0)[0] == pytest.approx(
        min(su.binning_objective(np.linspace(1, 30, 300001), 1.0, 0.0)), abs=1e-9)


def test_binning_restriction_flag():
    restricted, p_r = su.binning_cost(0.5, 2.0)
    free, p_f = su.binning_cost(0.5, 2.0, restrict=False)
    assert p_r >= 4.0 ** -2 * (1 - 1e-12)
    assert free <= restricted


def test_binning_strategy_hand_traces():
    s = su.binning_strategy(0.25, 1)
    for x0, grid_point in ((0.0, 0.0), (0.74, 0.5), (0.6, 0.5), (-0.76, -1.0), (0.75, 0.5)):
        assert x0 + s.encode_u1(np.array(x0)) == pytest.approx(grid_point)
    assert int(s.encode_msg(np.array(0.0))) == 0
    assert int(s.encode_msg(np.array(0.6))) == 1


@given(st.floats(-50, 50), st.floats(-0.4999, 0.4999), st.sampled_from([0, 1, 2, 3]))
def test_binning_exact_recovery_for_small_noise(x0, frac, r):
    p = 0.3
    s = su.binning_strategy(p, r)
    z = frac * 2 ** r * math.sqrt(p)
    assert evaluate_cost(ProblemParams(1.0, 1.0, r), s, x0, z).stage2_cost == pytest.approx(0.0, abs=1e-18)


def test_zero_forcing_and_zero_input_values():
    assert su.zero_forcing_cost(2.0, 3.0, 0) == pytest.approx(2 * 2.72 * 3)
    assert su.zero_forcing_cost(1.0, 1.0, 1) == pytest.approx(0.68)
    assert su.zero_input_dr_cost(1.0, 0) == pytest.approx(2.72)
    assert su.zero_input_dr_cost(4.0, 1) == pytest.approx(2.72)


def test_coarse_fine_against_dense_grid():
    cost, a = su.coarse_fine_cost(3)
    assert cost == pytest.approx(COARSE_FINE_R3, abs=1e-10)
    assert cost <= COARSE_FINE_R3 + 1e-15
    assert a == pytest.approx(COARSE_FINE_R3_A, abs=2e-4)


def test_coarse_fine_large_rate_limit():
    a = 3.0
    tail = (1 + a) ** 2 * math.exp(-a * a / 2 + 1.5 * (1 + math.log(a * a)))
    assert float(su.coarse_fine_expression(a, 60)) == pytest.approx(tail, rel=1e-15)


@given(st.floats(1.0001, 40))
def test_expression_dominates_error_moment(a):
    assert su.coarse_fine_error_moment(a) <= float(su.coarse_fine_expression(a, 60))


def test_error_moment_bounds_monte_carlo():
    z = np.random.default_rng(3).standard_normal(4_000_000)
    for a in (1.5, 3.0):
        v = (np.abs(z) + a) ** 2 * (np.abs(z) > a)
        assert v.mean() <= su.coarse_fine_error_moment(a)


def test_coarse_fine_strategy_traces():
    a, r = 4.0, 2
    s = su.coarse_fine_strategy(a, r)
    params = ProblemParams(1.0, 25.0, r)
    delta = 2 * a / 2 ** r
    for g in range(2 ** r):
        centre = -a + (g + 0.5) * delta
        assert abs(evaluate_cost(params, s, centre, 0.0).stage2_cost) ** 0.5 <= a * 2.0 ** -r
        # correct sub-bin decoding with |z| <= a: error within a^2 4^-R
        c = evaluate_cost(params, s, centre + 0.3 * delta, 0.4 * delta)
        assert c.stage2_cost <= a * a * 4.0 ** -r
    with pytest.raises(ValueError):
        su.coarse_fine_strategy(1.0, 2)
    with pytest.raises(ValueError):
        su.coarse_fine_strategy(2.0, 0)


def test_winner_transitions():
    assert su.total_upper(ProblemParams(1e3, 1e3, 4.0)).winner == su.COARSE_FINE
    assert su.total_upper(ProblemParams(1e-4, 1.0, 0.0)).winner in (su.BINNING, su.ZERO_FORCING)


@settings(max_examples=50)
@given(st.floats(1e-4, 1e4), st.floats(1e-4, 1e4), st.integers(0, 6))
def test_total_is_min_of_branches_and_nonincreasing_in_rate(k2, s2, r):
    a = su.total_upper(ProblemParams(k2, s2, r))
    b = su.total_upper(ProblemParams(k2, s2, r + 1))
    assert a.total == min(a.branches.values())
    assert b.total <= a.total * (1 + 1e-9)


def test_report_lists_assumption():
    rep = su.total_upper(ProblemParams(1.0, 1.0, 0.0))
    assert any("2.72" in s for s in rep.assumptions)


def test_binning_strategy_rejects_bad_inputs():
    with pytest.raises(ValueError):
        su.binning_strategy(0.0, 1)
    with pytest.raises(ValueError):
        su.binning_strategy(1.0, 1.5)


def test_psi_three_is_the_truncated_second_moment():
    assert float(su.binning_objective(0.25, 0.0, 1)) == pytest.approx(psi(3, 1.0))
