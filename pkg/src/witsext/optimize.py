"""One-dimensional minimization on an interval: dense scan, then local refinement.

The objectives here (infima over an input power P) are piecewise smooth and
not always unimodal, so a bare golden-section search can stall in the wrong
basin. We scan a grid that is log-spaced toward the lower end, pick the best
few grid-local minima, and polish each with bounded Brent iterations.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = ["ScalarMin", "scan_grid", "minimize_on_interval"]


@dataclass(frozen=True)
class ScalarMin:
    x: float
    fun: float


def scan_grid(lo, hi, n=400, log_decades=12):
    """Grid on [lo, hi] mixing log spacing near ``lo`` and linear spacing."""
    if hi <= lo:
        return np.array([lo])
    width = hi - lo
    logpart = lo + np.geomspace(width * 10.0 ** (-log_decades), width, n)
    linpart = np.linspace(lo, hi, n // 2)
    return np.unique(np.concatenate([[lo, hi], logpart, linpart]))


def minimize_on_interval(f, lo, hi, n=400, n_refine=3, xrtol=1e-9, grid=None):
    """Minimize a vectorized objective ``f`` over ``[lo, hi]``.

    ``f`` maps a 1-D array of abscissae to an array of values. Returns the best
    point seen; refinement only ever lowers the value found by the scan.
    """
    xs = scan_grid(lo, hi, n) if grid is None else np.asarray(grid, dtype=float)
    fs = np.asarray(f(xs), dtype=float)
    fs = np.where(np.isfinite(fs), fs, np.inf)
    best = int(np.argmin(fs))
    best_x, best_f = float(xs[best]), float(fs[best])
    if xs.size < 3:
        return ScalarMin(best_x, best_f)

    # grid-local minima, best first
    left = np.concatenate([[np.inf], fs[:-1]])
    right = np.concatenate([fs[1:], [np.inf]])
    local = np.flatnonzero((fs <= left) & (fs <= right))
    local = local[np.argsort(fs[local])][:n_refine]

    def scalar(x):
        return float(f(np.array([x]))[0])

    for i in local:
        a = float(xs[max(i - 1, 0)])
        b = float(xs[min(i + 1, xs.size - 1)])
        if b <= a:
            continue
        res = minimize_scalar(
            scalar, bounds=(a, b), method="bounded",
            options={"xatol": max(xrtol * max(abs(xs[i]), 1e-300), 1e-300)},
        )
        if np.isfinite(res.fun) and res.fun < best_f:
            best_x, best_f = float(res.x), float(res.fun)
    return ScalarMin(best_x, best_f)
