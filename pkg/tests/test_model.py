from hypothesis import given, strategies as st
import pytest

from witsext.model import (ProblemParams, evaluate_cost, mmse_only_strategy, zero_forcing_strategy,
                           zero_strategy)
from witsext.scalar_ub import binning_strategy


def test_identity_strategy_pays_state_energy():
    c = evaluate_cost(ProblemParams(1.0, 1.0), zero_strategy(), 2.0, 0.0)
    assert (c.input_cost, c.stage2_cost) == (0.0, 4.0)


@given(st.floats(-1e3, 1e3))
def test_zero_forcing_cancels_state(z):
    c = evaluate_cost(ProblemParams(1.0, 1.0), zero_forcing_strategy(), 2.0, z)
    assert c.total == 4.0 and c.stage2_cost == 0.0


def test_binning_hand_trace():
    s = binning_strategy(0.25, 1)
    c = evaluate_cost(ProblemParams(1.0, 1.0, 1), s, 0.6, 0.1)
    assert c.input_cost == pytest.approx(0.01)
    assert c.stage2_cost == 0.0


def test_mmse_only_decoder_gain():
    s = mmse_only_strategy(4.0)
    c = evaluate_cost(ProblemParams(1.0, 4.0), s, 1.0, 0.0)
    assert c.stage2_cost == pytest.approx((1 - 0.8) ** 2)


@pytest.mark.parametrize("kw", [dict(k2=0, sigma0_sq=1), dict(k2=1, sigma0_sq=-1),
                                dict(k2=1, sigma0_sq=1, r_ex=-1), dict(k2=1, sigma0_sq=1, m=0),
                                dict(k2=1, sigma0_sq=1, m=1.5), dict(k2=1, sigma0_sq=1, p_ex=-1)])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        ProblemParams(**kw)


def test_vector_params_rejected_by_scalar_evaluation():
    with pytest.raises(ValueError):
        evaluate_cost(ProblemParams(1.0, 1.0, m=2), zero_strategy(), 1.0, 0.0)


def test_with_returns_modified_copy():
    p = ProblemParams(1.0, 4.0)
    q = p.with_(r_ex=2.0)
    assert (p.r_ex, q.r_ex, q.sigma0) == (0.0, 2.0, 2.0)
