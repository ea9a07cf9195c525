"""Scalar (m = 1) upper bound: four strategies, analytic costs and executable forms.

* binning: uniform quantizer of bin width sqrt(P), bins colored cyclically with
  2^R colors, the color sent on the external link;
* zero forcing: force x0 onto a rate-R scalar quantizer point;
* zero input: send the rate-R quantizer index and take the distortion;
* coarse/fine: u1 = 0, the noisy state resolves the coarse bin of width 2a,
  the external link resolves one of 2^R sub-bins.

The scalar distortion-rate constant ``DR_CONSTANT = 2.72`` is the commonly
believed bound, not a proven one; reports carry it as an assumption flag.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np

from .model import ScalarStrategy
from .optimize import minimize_on_interval
from .special_fns import psi

__all__ = [
    "DR_CONSTANT",
    "ScalarUpperReport",
    "binning_objective",
    "binning_cost",
    "binning_strategy",
    "zero_forcing_cost",
    "zero_input_dr_cost",
    "coarse_fine_expression",
    "coarse_fine_error_moment",
    "coarse_fine_cost",
    "coarse_fine_strategy",
    "total_upper",
]

DR_CONSTANT = 2.72
COARSE_FINE_A_MAX = 50.0

BINNING = "binning"
ZERO_FORCING = "zero_forcing"
ZERO_INPUT_DR = "zero_input_dr"
COARSE_FINE = "coarse_fine"

_psi3 = np.vectorize(lambda t: psi(3, t), otypes=[float])


@dataclass(frozen=True)
class ScalarUpperReport:
    total: float
    winner: str
    p_star: float
    a_star: float
    branches: dict = field(default_factory=dict, compare=False)
    assumptions: tuple = ("distortion_rate_constant_c=2.72_assumed",)


def binning_objective(p, k2, r_ex):
    """k^2 P + psi(3, 2^R sqrt(P)), vectorized over P."""
    p = np.asarray(p, dtype=float)
    return k2 * p + _psi3(2.0 ** r_ex * np.sqrt(p))


@lru_cache(maxsize=4096)
def binning_cost(k2, r_ex, restrict=True):
    """Optimized binning cost and its power P*.

    With ``restrict`` the power is limited to P >= 2^{-2R}. Works in the
    radius variable s = 2^R sqrt(P); s beyond sqrt(1 + 4^R / k^2) costs more
    than the whole unit-variance noise and is never optimal.
    """
    scale = 4.0 ** (-r_ex)
    s_lo = 1.0 if restrict else 0.0
    s_hi = max(min(math.sqrt(1.0 + 1.0 / (k2 * scale)) + 1.0, 40.0), s_lo + 1.0)

    def objective(s):
        s = np.asarray(s, dtype=float)
        return k2 * s * s * scale + _psi3(s)

    res = minimize_on_interval(objective, s_lo, s_hi, n=300)
    return res.fun, res.x * res.x * scale


def _nearest_index(u):
    # nearest integer, ties toward zero
    u = np.asarray(u, dtype=float)
    return np.sign(u) * np.ceil(np.abs(u) - 0.5)


def _nearest_in_class(v, residue, modulus):
    """Integer j = residue (mod modulus) nearest to v; ties toward smaller |j|."""
    lo = residue + modulus * np.floor((v - residue) / modulus)
    hi = lo + modulus
    d_lo = np.abs(v - lo)
    d_hi = np.abs(v - hi)
    pick_hi = (d_hi < d_lo) | ((d_hi == d_lo) & (np.abs(hi) < np.abs(lo)))
    return np.where(pick_hi, hi, lo)


def binning_strategy(p, r_ex):
    """Executable binning strategy with grid sqrt(P) Z and 2^R colors."""
    if not p > 0:
        raise ValueError(f"P must be positive, got {p}")
    if int(r_ex) != r_ex or r_ex < 0:
        raise ValueError(f"r_ex must be a nonnegative integer, got {r_ex}")
    width = math.sqrt(p)
    colors = 2 ** int(r_ex)

    def encode_u1(x0):
        x0 = np.asarray(x0, dtype=float)
        return _nearest_index(x0 / width) * width - x0

    def encode_msg(x0):
        j = _nearest_index(np.asarray(x0, dtype=float) / width)
        return np.mod(j, colors).astype(np.int64)

    def decode_u2(y2, w):
        j = _nearest_in_class(np.asarray(y2, dtype=float) / width, np.asarray(w), colors)
        return j * width

    return ScalarStrategy(encode_u1, encode_msg, decode_u2, alphabet_size=colors,
                          name=f"binning(P={p:g},R={int(r_ex)})")


def zero_forcing_cost(k2, sigma0_sq, r_ex):
    return k2 * DR_CONSTANT * sigma0_sq * 4.0 ** (-r_ex)


def zero_input_dr_cost(sigma0_sq, r_ex):
    return DR_CONSTANT * sigma0_sq * 4.0 ** (-r_ex)


def coarse_fine_expression(a, r_ex):
    """a^2 2^{-2R} + (1 + a)^2 exp(-a^2/2 + 3/2 (1 + ln a^2)), vectorized over a."""
    a = np.asarray(a, dtype=float)
    tail = (1.0 + a) ** 2 * np.exp(-0.5 * a * a + 1.5 * (1.0 + np.log(a * a)))
    return a * a * 4.0 ** (-r_ex) + tail


def coarse_fine_error_moment(a):
    """(sqrt(psi(3, a)) + a sqrt(psi(1, a)))^2, which bounds E[(|z| + a)^2 1{|z| > a}]."""
    return (math.sqrt(psi(3, a)) + a * math.sqrt(psi(1, a))) ** 2


@lru_cache(maxsize=1024)
def coarse_fine_cost(r_ex):
    """min over a in (1, 50] of the coarse/fine expression; returns (cost, a*)."""
    lo = 1.0 + 1e-12
    res = minimize_on_interval(lambda a: coarse_fine_expression(a, r_ex), lo,
                               COARSE_FINE_A_MAX, n=400)
    return res.fun, res.x


def coarse_fine_strategy(a, r_ex):
    """Executable coarse/fine strategy: u1 = 0, sub-bin index on the external link."""
    if not a > 1:
        raise ValueError(f"a must exceed 1, got {a}")
    if int(r_ex) != r_ex or r_ex < 1:
        raise ValueError(f"r_ex must be a positive integer, got {r_ex}")
    subs = 2 ** int(r_ex)
    delta = 2.0 * a / subs

    def sub_bin(x):
        # sub-bin g covers [-a + g delta, -a + (g + 1) delta)
        return np.floor((np.asarray(x, dtype=float) + a) / delta)

    def encode_msg(x0):
        return np.mod(sub_bin(x0), subs).astype(np.int64)

    def decode_u2(y2, w):
        v = (np.asarray(y2, dtype=float) + a) / delta - 0.5
        g = _nearest_in_class(v, np.asarray(w), subs)
        return -a + (g + 0.5) * delta

    def encode_u1(x0):
        return np.zeros_like(np.asarray(x0, dtype=float))

    return ScalarStrategy(encode_u1, encode_msg, decode_u2, alphabet_size=subs,
                          name=f"coarse_fine(a={a:g},R={int(r_ex)})")


def total_upper(params, restrict_binning=True):
    """Best of the four scalar strategies at ``params`` (m is taken as 1)."""
    k2, s2, r = params.k2, params.sigma0_sq, params.r_ex
    bin_cost, p_star = binning_cost(k2, r, restrict_binning)
    cf_cost, a_star = coarse_fine_cost(r)
    branches = {
        BINNING: bin_cost,
        ZERO_FORCING: zero_forcing_cost(k2, s2, r),
        ZERO_INPUT_DR: zero_input_dr_cost(s2, r),
        COARSE_FINE: cf_cost,
    }
    winner = min(branches, key=branches.get)
    return ScalarUpperReport(branches[winner], winner, p_star, a_star, branches)
