"""How far apart are the best strategies and the lower bound?

Walks one parameter point through the lower bound, the candidate strategies,
and then scans a coarse grid to see the worst ratio at each link rate.
"""
import numpy as np

from witsext import ProblemParams
from witsext import asymptotic, finite_lb

# %% One point
params = ProblemParams(k2=0.04, sigma0_sq=25.0, r_ex=1.0)
lower, p_star = asymptotic.lower_bound(params)
print(f"lower bound {lower:.5f} (attained at input power P* = {p_star:.4g})")
for label, cost in sorted(asymptotic.upper_bound_branches(params).items(), key=lambda t: t[1]):
    print(f"  {label:24s} {cost:.5f}")
b = asymptotic.bound(params)
print(f"ratio {b.ratio:.3f}, best strategy {b.upper_strategy}")

# the finite-length bound refines the same quantity
fin = finite_lb.optimized_lower_bound(params)
print(f"finite-length lower bound {fin.value:.5f} at sigma_G^2={fin.sigma_g_star}, L={fin.l_star:.3g}")

# %% Worst ratio per rate on a 25 x 25 grid
grid = np.geomspace(1e-2, 1e2, 25)
for r in range(6):
    worst = max(asymptotic.bound(ProblemParams(k * k, s * s, r)).ratio for k in grid for s in grid)
    print(f"R_ex={r}: worst ratio {worst:.3f}")
