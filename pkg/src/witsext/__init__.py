"""Cost bounds and coding strategies for Witsenhausen's counterexample
extended with a rate-limited external channel between the two controllers.

Modules:
    special_fns  chi-square tails psi(m, r) and the sphere factors c_m, d_m
    model        ProblemParams, the two-stage cost, executable strategies
    asymptotic   infinite-length lower/upper bounds and ratio certificate
    finite_lb    finite-length lower bound via a change of measure
    scalar_ub    scalar upper bound, four strategies
    semidet      semi-deterministic bit-level model
    simulate     Monte Carlo engine
    sweep        parameter grids and CSV output
"""
from .model import ProblemParams, ScalarStrategy, GaussExtStrategy, evaluate_cost
from .special_fns import psi, c_m, d_m

__version__ = "0.1.0"

__all__ = ["ProblemParams", "ScalarStrategy", "GaussExtStrategy", "evaluate_cost",
           "psi", "c_m", "d_m"]
