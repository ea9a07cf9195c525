"""Monte Carlo evaluation of executable strategies.

Samples are drawn in fixed-size shards, each from its own PCG64 stream spawned
from one ``SeedSequence``. Shard boundaries do not depend on the number of
workers, so results are bit-identical for a given seed.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .asymptotic import effective_rate
from .model import GaussExtStrategy
from .scalar_ub import binning_strategy

__all__ = [
    "SimConfig",
    "SimEstimate",
    "PowerConstraintError",
    "run",
    "run_gauss_ext",
    "linear_duplication_strategy",
    "pam_levels",
    "pam_binning_strategy",
]

MIN_SAMPLES = 1000


class PowerConstraintError(ValueError):
    """External-channel input exceeds its power budget."""


@dataclass(frozen=True)
class SimConfig:
    n_samples: int = 1_000_000
    seed: int = 0
    antithetic: bool = False
    shard_size: int = 1 << 18
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise ValueError(f"n_samples must be at least {MIN_SAMPLES}, got {self.n_samples}")
        if self.shard_size < 2:
            raise ValueError("shard_size must be at least 2")


@dataclass(frozen=True)
class SimEstimate:
    mean_total: float
    mean_input: float
    mean_stage2: float
    stderr_total: float
    stderr_input: float
    stderr_stage2: float
    n: int


class _Moments:
    """Streaming count / mean / sum of squared deviations, mergeable (Chan et al.)."""

    __slots__ = ("n", "mean", "m2")

    def __init__(self, n=0, mean=0.0, m2=0.0):
        self.n, self.mean, self.m2 = n, mean, m2

    @classmethod
    def of(cls, x):
        x = np.asarray(x, dtype=float)
        mean = float(x.mean())
        return cls(x.size, mean, float(((x - mean) ** 2).sum()))

    def merge(self, other):
        if other.n == 0:
            return self
        if self.n == 0:
            return other
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return _Moments(n, mean, m2)

    @property
    def stderr(self):
        if self.n < 2:
            return math.inf
        return math.sqrt(self.m2 / (self.n - 1) / self.n)


def _shard_sizes(cfg):
    full, rest = divmod(cfg.n_samples, cfg.shard_size)
    sizes = [cfg.shard_size] * full + ([rest] if rest else [])
    if cfg.antithetic:
        sizes = [s - s % 2 for s in sizes if s >= 2]
    return sizes


def _normals(rng, n, antithetic, dims):
    if not antithetic:
        return [rng.standard_normal(n) for _ in range(dims)]
    half = [rng.standard_normal(n // 2) for _ in range(dims)]
    return [np.concatenate([h, -h]) for h in half]


def _pair_means(x, antithetic):
    # antithetic samples are stored as (first half, mirrored half)
    if not antithetic:
        return x
    h = x.size // 2
    return 0.5 * (x[:h] + x[h:])


def _run_shards(shard_fn, cfg):
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(_shard_sizes(cfg)))
    jobs = list(zip(_shard_sizes(cfg), seeds))

    def one(job):
        size, seed = job
        return shard_fn(np.random.Generator(np.random.PCG64(seed)), size)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(j) for j in jobs]

    merged = [_Moments() for _ in parts[0]]
    for part in parts:
        merged = [a.merge(b) for a, b in zip(merged, part)]
    return merged


def _estimate(moments, cfg):
    inp, st2, tot = moments[:3]
    n = tot.n * (2 if cfg.antithetic else 1)
    return SimEstimate(
        mean_total=tot.mean, mean_input=inp.mean, mean_stage2=st2.mean,
        stderr_total=tot.stderr, stderr_input=inp.stderr, stderr_stage2=st2.stderr,
        n=n,
    )


def _costs(params, u1, x2, antithetic):
    inp = params.k2 * u1 * u1
    st2 = x2 * x2
    return [_Moments.of(_pair_means(v, antithetic)) for v in (inp, st2, inp + st2)]


def run(params, strategy, cfg=SimConfig()):
    """Estimate the expected cost of a scalar strategy under x0 ~ N(0, sigma0^2), z ~ N(0, 1)."""
    if params.m != 1:
        raise ValueError("simulation is scalar; params.m must be 1")
    sigma0 = params.sigma0

    def shard(rng, size):
        g0, gz = _normals(rng, size, cfg.antithetic, 2)
        x0 = sigma0 * g0
        u1 = np.asarray(strategy.encode_u1(x0), dtype=float)
        x1 = x0 + u1
        w = np.asarray(strategy.encode_msg(x0))
        if w.size and (w.min() < 0 or w.max() >= strategy.alphabet_size):
            raise ValueError(f"{strategy.name}: message outside alphabet of size {strategy.alphabet_size}")
        u2 = np.asarray(strategy.decode_u2(x1 + gz, w), dtype=float)
        return _costs(params, u1, x1 - u2, cfg.antithetic)

    return _estimate(_run_shards(shard, cfg), cfg)


def run_gauss_ext(params, strategy, cfg=SimConfig()):
    """Like ``run`` but the message crosses a Gaussian channel of power P_ex and unit noise.

    Raises PowerConstraintError when the empirical message power exceeds P_ex
    by more than three standard errors.
    """
    if params.p_ex is None:
        raise ValueError("params.p_ex must be set")
    if not isinstance(strategy, GaussExtStrategy):
        raise TypeError("run_gauss_ext needs a GaussExtStrategy")
    sigma0 = params.sigma0

    def shard(rng, size):
        g0, gz, ge = _normals(rng, size, cfg.antithetic, 3)
        x0 = sigma0 * g0
        u1 = np.asarray(strategy.encode_u1(x0), dtype=float)
        x1 = x0 + u1
        msg = np.asarray(strategy.encode_msg(x0), dtype=float) * np.ones_like(x0)
        u2 = np.asarray(strategy.decode_u2(x1 + gz, msg + ge), dtype=float)
        return _costs(params, u1, x1 - u2, cfg.antithetic) + [_Moments.of(msg * msg)]

    moments = _run_shards(shard, cfg)
    power = moments[3]
    if power.mean > params.p_ex * (1.0 + 1e-12) + 3.0 * power.stderr:
        raise PowerConstraintError(
            f"{strategy.name}: message power {power.mean:.6g} exceeds P_ex={params.p_ex:g}"
        )
    return _estimate(moments, cfg)


def linear_duplication_strategy(sigma0_sq, p_ex):
    """u1 = 0, state sent linearly at full power, joint linear MMSE decoder."""
    gain = math.sqrt(p_ex / sigma0_sq)
    denom = 1.0 + sigma0_sq + p_ex

    def decode(y2, y_ext):
        return sigma0_sq * (np.asarray(y2) + gain * np.asarray(y_ext)) / denom

    return GaussExtStrategy(
        lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        lambda x: gain * np.asarray(x, dtype=float),
        decode,
        name="linear_duplication",
    )


def pam_levels(n_levels, p_ex, probs=None):
    """Symmetric PAM constellation with mean power P_ex under ``probs`` (uniform by default)."""
    base = 2.0 * np.arange(n_levels) - (n_levels - 1)
    probs = np.full(n_levels, 1.0 / n_levels) if probs is None else np.asarray(probs)
    power = float((probs * base * base).sum())
    return base * math.sqrt(p_ex / power) if power > 0 else np.zeros(n_levels)


def _color_probs(width, colors, sigma0_sq):
    # Pr(bin index = c mod colors) for x0 ~ N(0, sigma0^2) and grid width * Z
    from scipy.stats import norm

    sigma0 = math.sqrt(sigma0_sq)
    jmax = int(math.ceil(12.0 * sigma0 / width)) + colors
    j = np.arange(-jmax, jmax + 1)
    mass = norm.cdf((j + 0.5) * width / sigma0) - norm.cdf((j - 0.5) * width / sigma0)
    probs = np.zeros(colors)
    np.add.at(probs, np.mod(j, colors), mass)
    return probs / probs.sum()


def pam_binning_strategy(p, p_ex, sigma0_sq, r_ex=None):
    """Scalar binning with the color sent as a 2^R-PAM symbol over the Gaussian link.

    R defaults to the external capacity rounded down. The constellation is
    scaled so the expected symbol power equals P_ex under the actual color
    distribution. The decoder slices the PAM symbol, then decodes the bin.
    """
    if r_ex is None:
        r_ex = int(math.floor(effective_rate(p_ex)))
    base = binning_strategy(p, r_ex)
    colors = base.alphabet_size
    levels = pam_levels(colors, p_ex, _color_probs(math.sqrt(p), colors, sigma0_sq))

    def encode_msg(x0):
        return levels[base.encode_msg(x0)]

    def decode(y2, y_ext):
        if colors == 1:
            w = np.zeros_like(np.asarray(y2), dtype=np.int64)
        else:
            step = levels[1] - levels[0]
            w = np.clip(np.rint((np.asarray(y_ext) - levels[0]) / step), 0, colors - 1).astype(np.int64)
        return base.decode_u2(y2, w)

    return GaussExtStrategy(base.encode_u1, encode_msg, decode,
                            name=f"pam_binning(P={p:g},R={r_ex})")
