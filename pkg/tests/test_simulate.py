import math

import numpy as np
import pytest

from witsext.asymptotic import linear_two_observation_mmse
from witsext.model import GaussExtStrategy, ProblemParams, mmse_only_strategy, zero_strategy
from witsext.scalar_ub import binning_strategy
from witsext.simulate import (PowerConstraintError, SimConfig, linear_duplication_strategy,
                              pam_binning_strategy, pam_levels, run, run_gauss_ext)

CFG = SimConfig(n_samples=200_000, seed=7, shard_size=1 << 15)


def test_zero_strategy_stage2_is_state_power():
    e = run(ProblemParams(1.0, 2.0), zero_strategy(), CFG)
    assert abs(e.mean_stage2 - 2.0) <= 3 * e.stderr_stage2
    assert e.mean_input == 0.0


def test_mmse_only_stage2():
    e = run(ProblemParams(1.0, 3.0), mmse_only_strategy(3.0), CFG)
    assert abs(e.mean_stage2 - 0.75) <= 3 * e.stderr_stage2


def test_seed_determinism_and_worker_independence():
    s = binning_strategy(0.25, 2)
    p = ProblemParams(1.0, 1.0, 2)
    a = run(p, s, CFG)
    assert a == run(p, s, CFG)
    b = run(p, s, SimConfig(n_samples=CFG.n_samples, seed=7, shard_size=1 << 15, workers=3))
    assert a == b
    assert a != run(p, s, SimConfig(n_samples=CFG.n_samples, seed=8, shard_size=1 << 15))


def test_stderr_shrinks_like_root_n():
    p = ProblemParams(1.0, 2.0)
    small = run(p, zero_strategy(), SimConfig(n_samples=10_000, seed=1))
    big = run(p, zero_strategy(), SimConfig(n_samples=1_000_000, seed=1))
    assert big.stderr_stage2 / small.stderr_stage2 == pytest.approx(0.1, rel=0.1)


def test_merged_moments_match_single_pass():
    p = ProblemParams(1.0, 2.0)
    one = run(p, zero_strategy(), SimConfig(n_samples=50_000, seed=4, shard_size=50_000))
    many = run(p, zero_strategy(), SimConfig(n_samples=50_000, seed=4, shard_size=1_000))
    assert many.n == one.n == 50_000
    assert many.stderr_stage2 == pytest.approx(one.stderr_stage2, rel=0.05)


def test_antithetic_sampling():
    e = run(ProblemParams(1.0, 1.0), mmse_only_strategy(1.0),
            SimConfig(n_samples=100_001, seed=2, antithetic=True))
    assert e.n == 100_000
    assert abs(e.mean_stage2 - 0.5) <= 3 * e.stderr_stage2


def nearest_point_cost(d):
    # E[(d * round(z / d))^2]: the decoder lands on the same-colour point nearest x1 + z
    from scipy.stats import norm
    j = np.arange(1, 200)
    mass = norm.sf((j - 0.5) * d) - norm.sf((j + 0.5) * d)
    return float(2 * np.sum((j * d) ** 2 * mass))


@pytest.mark.parametrize("p, r", [(0.25, 0), (1.0, 1), (4.0, 2)])
def test_binning_stage2_is_nearest_point_error(p, r):
    e = run(ProblemParams(1.0, 1.0, r), binning_strategy(p, r), CFG)
    assert abs(e.mean_stage2 - nearest_point_cost(2 ** r * math.sqrt(p))) <= 3 * e.stderr_stage2


def test_alphabet_is_enforced():
    bad = binning_strategy(0.25, 1)
    bad = type(bad)(bad.encode_u1, lambda x: np.full(np.shape(x), 5), bad.decode_u2, 2, "bad")
    with pytest.raises(ValueError):
        run(ProblemParams(1.0, 1.0, 1), bad, CFG)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(n_samples=999)
    with pytest.raises(ValueError):
        run(ProblemParams(1.0, 1.0, m=2), zero_strategy(), CFG)


def test_linear_duplication_matches_closed_form():
    p = ProblemParams(1.0, 100.0, p_ex=100.0)
    e = run_gauss_ext(p, linear_duplication_strategy(100.0, 100.0), CFG)
    assert abs(e.mean_stage2 - linear_two_observation_mmse(1.0, 100.0, 100.0)) <= 3 * e.stderr_stage2


def test_dead_link_reduces_to_plain_run():
    p = ProblemParams(1.0, 2.0, p_ex=0.0)
    base = mmse_only_strategy(2.0)
    silent = GaussExtStrategy(base.encode_u1, lambda x: np.zeros_like(x),
                              lambda y2, ye: base.decode_u2(y2, None))
    e = run_gauss_ext(p, silent, CFG)
    assert abs(e.mean_stage2 - 2.0 / 3.0) <= 3 * e.stderr_stage2


def test_pam_binning_beats_linear_duplication():
    p = ProblemParams(1.0, 100.0, p_ex=100.0)
    lin = run_gauss_ext(p, linear_duplication_strategy(100.0, 100.0), CFG)
    pam = run_gauss_ext(p, pam_binning_strategy(1.0, 100.0, 100.0), CFG)
    assert pam.mean_total + 3 * math.hypot(pam.stderr_total, lin.stderr_total) < lin.mean_total


def test_power_violation_detected():
    p = ProblemParams(1.0, 1.0, p_ex=1.0)
    loud = GaussExtStrategy(lambda x: np.zeros_like(x), lambda x: 2.0 * x, lambda y2, ye: y2)
    with pytest.raises(PowerConstraintError):
        run_gauss_ext(p, loud, CFG)
    with pytest.raises(ValueError):
        run_gauss_ext(ProblemParams(1.0, 1.0), loud, CFG)


def test_pam_levels_power():
    lv = pam_levels(4, 10.0)
    assert np.mean(lv ** 2) == pytest.approx(10.0)
    probs = np.array([0.1, 0.4, 0.4, 0.1])
    lv = pam_levels(4, 10.0, probs)
    assert float(probs @ lv ** 2) == pytest.approx(10.0)
