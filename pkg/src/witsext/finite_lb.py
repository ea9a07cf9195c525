"""Finite-length lower bound from a change of measure on the observation noise.

The second-stage noise is swapped for a test noise of variance sigma_G^2 >= 1,
restricted to a sphere of radius sqrt(m L^2); the likelihood ratio on that
sphere is bounded below, giving a prefactor times a distortion floor kappa_2.
Any admissible (sigma_G^2, L) gives a valid bound, so the inner maximization
is over a fixed grid.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .optimize import minimize_on_interval
from .special_fns import TailUnderflowError, c_m, one_minus_d_m

__all__ = [
    "FiniteLowerBound",
    "SIGMA_G_SQ_GRID",
    "L_GRID",
    "AUGMENT_POINT",
    "MAX_M",
    "kappa2",
    "eta",
    "inner_grid",
    "eta_max",
    "optimized_lower_bound",
]

SIGMA_G_SQ_GRID = (1.0, 1.01, 1.05, 1.1, 1.25, 1.5, 2.0, 3.0)
L_GRID = tuple(np.geomspace(0.1, 20.0, 40))
# (sigma_G^2, L) = (1, large) reproduces the infinite-length lower bound
AUGMENT_POINT = (1.0, 1e3)
MAX_M = 64


@dataclass(frozen=True)
class FiniteLowerBound:
    value: float
    p_star: float
    sigma_g_star: float
    l_star: float


def _check(sigma_g_sq, big_l, m):
    if not sigma_g_sq >= 1.0:
        raise ValueError(f"sigma_g_sq must be >= 1, got {sigma_g_sq}")
    if not big_l > 0:
        raise ValueError(f"L must be positive, got {big_l}")
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")


def kappa2(p, sigma0_sq, r_ex, sigma_g_sq, big_l, m):
    """Distortion floor of the finite-length bound for given (sigma_G^2, L)."""
    _check(sigma_g_sq, big_l, m)
    cm = c_m(m, big_l)
    omd = one_minus_d_m(m, big_l)
    dm = 1.0 - omd
    num = sigma0_sq * sigma_g_sq * 2.0 ** (-2.0 * r_ex)
    den = cm ** (2.0 / m) * math.exp(omd) * ((math.sqrt(sigma0_sq) + math.sqrt(p)) ** 2 + dm * sigma_g_sq)
    return num / den


def _log_prefactor(sigma_g_sq, big_l, m, cm):
    return 0.5 * m * math.log(sigma_g_sq) - math.log(cm) - 0.5 * m * big_l ** 2 * (sigma_g_sq - 1.0)


def eta(p, sigma0_sq, r_ex, sigma_g_sq, big_l, m):
    """Lower bound on the second-stage cost at input power P."""
    k2v = kappa2(p, sigma0_sq, r_ex, sigma_g_sq, big_l, m)
    pref = math.exp(_log_prefactor(sigma_g_sq, big_l, m, c_m(m, big_l)))
    gap = max(math.sqrt(k2v) - math.sqrt(p), 0.0)
    return pref * gap * gap


@lru_cache(maxsize=None)
def inner_grid(m):
    """Per-point constants of the (sigma_G^2, L) search grid for dimension m.

    Returns arrays (sigma_g_sq, L, prefactor, c_m^{2/m} e^{1-d_m}, d_m).
    Points whose sphere probability underflows are dropped.
    """
    pairs = [(sg, l) for sg in SIGMA_G_SQ_GRID for l in L_GRID] + [AUGMENT_POINT]
    rows = []
    for sg, l in pairs:
        try:
            cm = c_m(m, l)
            omd = one_minus_d_m(m, l)
        except TailUnderflowError:
            continue
        pref = math.exp(_log_prefactor(sg, l, m, cm))
        rows.append((sg, l, pref, cm ** (2.0 / m) * math.exp(omd), 1.0 - omd))
    arr = np.array(rows, dtype=float)
    arr.setflags(write=False)
    return tuple(arr[:, j] for j in range(arr.shape[1]))


def _eta_table(p, sigma0_sq, r_ex, m):
    # eta for every P (rows) and grid point (columns)
    sg, _, pref, shrink, dm = inner_grid(m)
    p = np.asarray(p, dtype=float)[:, None]
    k2v = sigma0_sq * sg * 2.0 ** (-2.0 * r_ex) / (shrink * ((math.sqrt(sigma0_sq) + np.sqrt(p)) ** 2 + dm * sg))
    gap = np.maximum(np.sqrt(k2v) - np.sqrt(p), 0.0)
    return pref * gap * gap


def eta_max(p, sigma0_sq, r_ex, m):
    """Max of eta over the inner grid, vectorized over P."""
    return _eta_table(np.atleast_1d(p), sigma0_sq, r_ex, m).max(axis=1)


def optimized_lower_bound(params):
    """inf over P of k^2 P + max over the inner grid of eta."""
    m = int(params.m)
    if m > MAX_M:
        raise ValueError(f"m={m} exceeds the supported maximum {MAX_M}")
    s2, r = params.sigma0_sq, params.r_ex
    sg, ls, _, shrink, dm = inner_grid(m)
    p_hi = float(np.max(s2 * sg * 2.0 ** (-2.0 * r) / (shrink * (s2 + dm * sg))))
    if not p_hi > 0.0:
        return FiniteLowerBound(0.0, 0.0, AUGMENT_POINT[0], AUGMENT_POINT[1])

    def objective(p):
        return params.k2 * p + eta_max(p, s2, r, m)

    res = minimize_on_interval(objective, 0.0, p_hi, n=300)
    j = int(np.argmax(_eta_table([res.x], s2, r, m)[0]))
    return FiniteLowerBound(res.fun, res.x, float(sg[j]), float(ls[j]))
