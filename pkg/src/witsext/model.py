"""Problem parameters, the two-stage cost functional and executable strategies.

The system is Witsenhausen's two-stage problem with an extra noiseless
rate-limited link from the first controller to the second::

    x1 = x0 + u1,   y2 = x1 + z,   u2 = gamma2(y2, W),   x2 = x1 - u2
    J  = k^2 u1^2 + x2^2

The observation noise has unit variance throughout.
"""
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ProblemParams",
    "ScalarStrategy",
    "GaussExtStrategy",
    "CostSample",
    "evaluate_cost",
    "zero_strategy",
    "zero_forcing_strategy",
    "mmse_only_strategy",
]


@dataclass(frozen=True)
class ProblemParams:
    """A point in parameter space: (k^2, sigma0^2, R_ex, m) and optional P_ex.

    ``p_ex`` is the power of a Gaussian external channel with unit noise; leave
    it as ``None`` for the noiseless fixed-rate link.
    """

    k2: float
    sigma0_sq: float
    r_ex: float = 0.0
    m: int = 1
    p_ex: Optional[float] = None

    def __post_init__(self):
        if not self.k2 > 0:
            raise ValueError(f"k2 must be positive, got {self.k2}")
        if not self.sigma0_sq > 0:
            raise ValueError(f"sigma0_sq must be positive, got {self.sigma0_sq}")
        if not self.r_ex >= 0:
            raise ValueError(f"r_ex must be nonnegative, got {self.r_ex}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.p_ex is not None and not self.p_ex >= 0:
            raise ValueError(f"p_ex must be nonnegative, got {self.p_ex}")

    @property
    def sigma0(self):
        return float(np.sqrt(self.sigma0_sq))

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class ScalarStrategy:
    """Deterministic scalar control law gamma = (gamma1, gamma2).

    All three maps must accept numpy arrays elementwise so the Monte Carlo
    engine can evaluate them in bulk.
    """

    encode_u1: Callable
    encode_msg: Callable
    decode_u2: Callable
    alphabet_size: int = 1
    name: str = field(default="strategy", compare=False)


@dataclass(frozen=True)
class GaussExtStrategy:
    """Strategy for a Gaussian external channel: the message is a real number.

    ``encode_msg(x0)`` is the channel input (power constrained by P_ex) and
    ``decode_u2(y2, y_ext)`` sees both noisy observations.
    """

    encode_u1: Callable
    encode_msg: Callable
    decode_u2: Callable
    name: str = field(default="strategy", compare=False)


@dataclass(frozen=True)
class CostSample:
    input_cost: float
    stage2_cost: float

    @property
    def total(self):
        return self.input_cost + self.stage2_cost


def evaluate_cost(params, strategy, x0, z):
    """Cost of one realization (x0, z) under a scalar strategy."""
    if params.m != 1:
        raise ValueError("executable strategies are scalar; params.m must be 1")
    u1 = strategy.encode_u1(x0)
    x1 = x0 + u1
    w = strategy.encode_msg(x0)
    u2 = strategy.decode_u2(x1 + z, w)
    x2 = x1 - u2
    return CostSample(float(params.k2 * u1 * u1), float(x2 * x2))


def _zeros(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def _zero_msg(x):
    return np.zeros_like(np.asarray(x), dtype=np.int64)


def zero_strategy():
    """u1 = 0, u2 = 0: no control at all."""
    return ScalarStrategy(_zeros, _zero_msg, lambda y, w: _zeros(y), name="zero")


def zero_forcing_strategy():
    """u1 = -x0 drives the state to zero; the second stage has nothing to do."""
    return ScalarStrategy(
        lambda x: -np.asarray(x, dtype=float), _zero_msg, lambda y, w: _zeros(y),
        name="zero_forcing",
    )


def mmse_only_strategy(sigma0_sq):
    """u1 = 0 and a linear MMSE estimate of x1 from y2 alone."""
    gain = sigma0_sq / (sigma0_sq + 1.0)
    return ScalarStrategy(
        _zeros, _zero_msg, lambda y, w: gain * np.asarray(y, dtype=float),
        name="mmse_only",
    )
