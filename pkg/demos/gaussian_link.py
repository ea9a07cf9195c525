"""Replacing the finite-rate link with a Gaussian channel.

With P_ex = sigma0^2 the link capacity grows with the state variance. Binning
at that rate keeps improving, while linear use of the link saturates.
"""
from witsext import ProblemParams
from witsext import asymptotic
from witsext.simulate import SimConfig, linear_duplication_strategy, pam_binning_strategy, run_gauss_ext

for s2 in (1.0, 10.0, 100.0, 1e3, 1e4):
    p = ProblemParams(1.0, s2, p_ex=s2)
    binning = asymptotic.gauss_ext_binning_cost(p)
    baseline = asymptotic.gauss_ext_baseline_cost(p)
    print(f"sigma0_sq = P_ex = {s2:>7g}: rate {float(asymptotic.effective_rate(s2)):.2f} bits, "
          f"binning {binning:.3g}, linear baseline {baseline:.3g}, ratio {baseline / binning:.3g}")

# %% Simulated: PAM-coded bin colour against linear duplication at P_ex = 100
p = ProblemParams(1.0, 100.0, p_ex=100.0)
cfg = SimConfig(n_samples=200_000, seed=3)
lin = run_gauss_ext(p, linear_duplication_strategy(100.0, 100.0), cfg)
pam = run_gauss_ext(p, pam_binning_strategy(1.0, 100.0, 100.0), cfg)
print(f"linear duplication total {lin.mean_total:.4f} +/- {lin.stderr_total:.4f}")
print(f"PAM binning total        {pam.mean_total:.4f} +/- {pam.stderr_total:.4f}")
