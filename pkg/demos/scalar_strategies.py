"""Scalar strategies: analytic costs next to simulated ones.

The scalar upper bound takes the best of four explicit strategies. Two of
them (binning and coarse/fine) are executable, so we can simulate them and
compare.
"""
import math

from witsext import ProblemParams
from witsext import finite_lb, scalar_ub
from witsext.simulate import SimConfig, run
from witsext.special_fns import psi

cfg = SimConfig(n_samples=200_000, seed=1)

# %% Which strategy wins where
for k2, s2, r in [(1e-3, 1.0, 0), (1.0, 1.0, 1), (1e3, 1e3, 4), (10.0, 0.1, 2)]:
    p = ProblemParams(k2, s2, r)
    rep = scalar_ub.total_upper(p)
    lo = finite_lb.optimized_lower_bound(p).value
    print(f"k2={k2:g} sigma0_sq={s2:g} R={r}: best {rep.winner} cost {rep.total:.4g}, "
          f"lower {lo:.4g}, ratio {rep.total / lo:.2f}")

# %% Binning on the grid sqrt(P) Z with 2^R colours
# The decoder looks for the nearest point of the announced colour, so errors
# need |z| beyond half the same-colour spacing 2^R sqrt(P). Each error
# costs a whole multiple of that spacing, so the simulated cost sits above
# the truncated moment psi(3, 2^R sqrt(P)).
for p_grid, r in [(0.25, 1), (1.0, 2)]:
    est = run(ProblemParams(1.0, 1.0, r), scalar_ub.binning_strategy(p_grid, r), cfg)
    print(f"binning P={p_grid} R={r}: input {est.mean_input:.4f}, "
          f"stage-2 {est.mean_stage2:.4f} +/- {est.stderr_stage2:.4f}, "
          f"psi(3, 2^R sqrt P) = {psi(3, 2 ** r * math.sqrt(p_grid)):.4f}")

# %% Coarse/fine: sub-bins of [-a, a] indexed on the link
r = 3
cost, a_star = scalar_ub.coarse_fine_cost(r)
est = run(ProblemParams(1.0, 25.0, r), scalar_ub.coarse_fine_strategy(a_star, r), cfg)
print(f"coarse/fine R={r}: a*={a_star:.3f}, analytic bound {cost:.4f}, "
      f"simulated {est.mean_stage2:.4f} +/- {est.stderr_stage2:.4f}")
print(f"sub-bin width 2a/2^R = {2 * a_star / 2 ** r:.3f}, "
      f"rms quantization error {2 * a_star / 2 ** r / math.sqrt(12):.3f}")
