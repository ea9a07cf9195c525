"""Semi-deterministic bit-level model of the problem.

Every variable is a binary fixed-point word. The observation noise has power 1
and XORs iid Ber(1/2) bits into every position <= 0 (the units bit and all
bits after the binary point); bits above it reach the second controller
clean. Costs are measured with ``pow``: the value of the highest bit that can
be 1.

Bits are addressed by 1-based index, ``b1`` being the most significant bit of
the state. A bit is resolved at the decoder when it is above the noise line,
sent on the external link, or forced to zero by the input. The input needed
to force a set of bits has the power of the most significant forced bit.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math
import warnings

import numpy as np

__all__ = [
    "SemidetParams",
    "BitState",
    "BitStrategy",
    "InvalidStrategyError",
    "parse_binary",
    "format_binary",
    "pow_of",
    "semidet_cost",
    "optimal_strategy",
    "optimal_tradeoff",
    "brute_force_optimal",
    "render",
    "MAX_BRUTE_FORCE_BITS",
]

MAX_BITS = 64
MAX_BRUTE_FORCE_BITS = 16


class InvalidStrategyError(ValueError):
    pass


def _exponent(value, what):
    if not value > 0:
        raise ValueError(f"{what} must be a positive power of two, got {value}")
    e = math.log2(value)
    if e != int(e):
        raise ValueError(f"{what} must be an integer power of two, got {value}")
    return int(e)


@dataclass(frozen=True)
class SemidetParams:
    """State power 2^e (its top bit sits at position e) and external capacity."""

    sigma0_pow: float
    cap_ext: int
    num_bits: int

    def __post_init__(self):
        _exponent(self.sigma0_pow, "sigma0_pow")
        if int(self.cap_ext) != self.cap_ext or self.cap_ext < 0:
            raise ValueError(f"cap_ext must be a nonnegative integer, got {self.cap_ext}")
        if not 1 <= self.num_bits <= MAX_BITS:
            raise ValueError(f"num_bits must be in [1, {MAX_BITS}], got {self.num_bits}")

    @property
    def top(self):
        return _exponent(self.sigma0_pow, "sigma0_pow")

    def position(self, index):
        """Binary exponent of bit ``b<index>``."""
        return self.top - (index - 1)

    @property
    def indices(self):
        return range(1, self.num_bits + 1)

    @property
    def noisy(self):
        """Indices of bits corrupted by the observation noise, most significant first."""
        return [i for i in self.indices if self.position(i) <= 0]


@dataclass(frozen=True)
class BitState:
    """Fixed-point binary word; ``point_pos`` bits precede the binary point."""

    bits: tuple
    point_pos: int

    def __post_init__(self):
        if len(self.bits) > MAX_BITS:
            raise ValueError(f"at most {MAX_BITS} bits")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if not 0 <= self.point_pos <= len(self.bits):
            raise ValueError("point_pos outside the word")

    @property
    def value(self):
        v = Fraction(0)
        for i, b in enumerate(self.bits):
            v += b * Fraction(2) ** (self.point_pos - 1 - i)
        return v

    def __str__(self):
        s = "".join(map(str, self.bits))
        return s[: self.point_pos] + "." + s[self.point_pos:]

    @classmethod
    def from_value(cls, value, top, num_bits):
        """Word holding bit positions top .. top - num_bits + 1 of ``value``."""
        v = Fraction(value)
        bits = tuple(int(v // Fraction(2) ** (top - i)) % 2 for i in range(num_bits))
        return cls(bits, top + 1) if 0 <= top + 1 <= num_bits else _padded(bits, top)


def _padded(bits, top):
    if top < 0:
        return BitState((0,) * (-top - 1) + bits, 0)
    extra = top + 1 - len(bits)
    return BitState(bits + (0,) * extra, top + 1)


@dataclass(frozen=True)
class BitStrategy:
    sent_bits: frozenset = frozenset()
    forced_bits: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sent_bits", frozenset(self.sent_bits))
        object.__setattr__(self, "forced_bits", frozenset(self.forced_bits))


def parse_binary(text):
    """'0.01' -> 0.25. Accepts an optional sign and binary point."""
    text = text.strip()
    sign = -1 if text.startswith("-") else 1
    text = text.lstrip("+-")
    whole, _, frac = text.partition(".")
    value = Fraction(int(whole, 2) if whole else 0)
    for i, ch in enumerate(frac, start=1):
        if ch not in "01":
            raise ValueError(f"not a binary digit: {ch!r}")
        value += int(ch) * Fraction(1, 2 ** i)
    return float(sign * value)


def format_binary(value, frac_bits=16):
    v = Fraction(abs(value))
    whole = int(v)
    rest = v - whole
    digits = []
    while rest and len(digits) < frac_bits:
        rest *= 2
        digits.append(str(int(rest)))
        rest -= int(rest)
    out = bin(whole)[2:] + ("." + "".join(digits) if digits else "")
    return ("-" if value < 0 else "") + out


def pow_of(values):
    """Power of a set of values: 2^j for the highest position j holding a 1.

    An all-zero set has no such bit; 0 is returned and a warning is issued.
    """
    vals = [abs(Fraction(v)) for v in values]
    if not vals:
        raise ValueError("pow_of needs a nonempty set")
    biggest = max(vals)
    if biggest == 0:
        warnings.warn("pow of an all-zero set is undefined; returning 0", RuntimeWarning)
        return 0.0
    j = math.floor(math.log2(biggest))
    # guard against log2 rounding at exact powers of two
    if Fraction(2) ** j > biggest:
        j -= 1
    elif Fraction(2) ** (j + 1) <= biggest:
        j += 1
    return float(Fraction(2) ** j)


def _validate(params, strategy, input_pow_budget):
    bad = (strategy.sent_bits | strategy.forced_bits) - set(params.indices)
    if bad:
        raise InvalidStrategyError(f"bit indices {sorted(bad)} outside b1..b{params.num_bits}")
    if len(strategy.sent_bits) > params.cap_ext:
        raise InvalidStrategyError(
            f"{len(strategy.sent_bits)} bits sent but capacity is {params.cap_ext}"
        )
    if input_pow_budget is not None and strategy.forced_bits:
        need = 2.0 ** params.position(min(strategy.forced_bits))
        if need > input_pow_budget:
            raise InvalidStrategyError(
                f"forcing b{min(strategy.forced_bits)} needs input power {need:g} "
                f"> budget {input_pow_budget:g}"
            )


def semidet_cost(params, strategy, input_pow_budget=None):
    """(pow(u1), pow(x2)) for a bit-allocation strategy."""
    _validate(params, strategy, input_pow_budget)
    forced = strategy.forced_bits
    input_pow = 2.0 ** params.position(min(forced)) if forced else 0.0
    unresolved = [i for i in params.noisy
                  if i not in strategy.sent_bits and i not in forced]
    mmse_pow = 2.0 ** params.position(unresolved[0]) if unresolved else 0.0
    return input_pow, mmse_pow


def _reach(params, input_pow_budget):
    # smallest index the input can force (None when no bit is reachable)
    if input_pow_budget is None or input_pow_budget <= 0:
        return None
    b = math.floor(math.log2(input_pow_budget))
    idx = max(params.top - b + 1, 1)
    return idx if idx <= params.num_bits else None


def optimal_strategy(params, input_pow_budget):
    """Send the most significant noisy bits, force the rest if the input reaches them.

    For sigma0^2 > 1 the clean upper bits need nothing, so the link carries the
    top noisy bits; for sigma0^2 < 1 every bit is noisy and the link carries
    the top bits of the state. Forcing is only worthwhile when it clears every
    remaining noisy bit, otherwise the top unresolved bit is unchanged.
    """
    noisy = params.noisy
    sent = noisy[: params.cap_ext]
    rest = noisy[params.cap_ext:]
    reach = _reach(params, input_pow_budget)
    forced = rest if rest and reach is not None and rest[0] >= reach else []
    return BitStrategy(frozenset(sent), frozenset(forced))


def optimal_tradeoff(params, input_pow_budget):
    """Smallest pow(x2) attainable with pow(u1) <= budget."""
    return semidet_cost(params, optimal_strategy(params, input_pow_budget), input_pow_budget)[1]


def brute_force_optimal(params, input_pow_budget):
    """Exhaustive search over every (sent, forced) pair; returns the least pow(x2).

    Works on bit masks (bit i-1 of a mask stands for b<i>) so that all forced
    sets are scored at once for each batch of sent sets.
    """
    n = params.num_bits
    if n > MAX_BRUTE_FORCE_BITS:
        raise ValueError(f"brute force limited to {MAX_BRUTE_FORCE_BITS} bits, got {n}")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    lowest = masks & -masks
    # index (0-based from the MSB) of the most significant set bit; -1 for 0
    top_idx = np.where(masks > 0, np.log2(np.maximum(lowest, 1)).astype(np.int64), -1)
    pos = params.top - np.arange(n)
    pow_table = np.where(top_idx >= 0, 2.0 ** (params.top - np.maximum(top_idx, 0)), 0.0)

    budget = 0.0 if input_pow_budget is None else float(input_pow_budget)
    forced_ok = masks[pow_table <= budget]
    noisy_mask = int(sum(1 << i for i in range(n) if pos[i] <= 0))

    sent_sets = [sum(1 << i for i in c)
                 for k in range(min(params.cap_ext, n) + 1)
                 for c in combinations(range(n), k)]
    sent = np.array(sent_sets, dtype=np.int64)
    best = math.inf
    chunk = max(1, (1 << 22) // max(forced_ok.size, 1))
    for start in range(0, sent.size, chunk):
        s = sent[start:start + chunk, None]
        unresolved = noisy_mask & ~s & ~forced_ok[None, :]
        best = min(best, float(pow_table[unresolved].min()))
    return best


def render(params, strategy):
    """Two-row diagram: bit labels with the binary point, then a role per bit.

    Roles: ``=`` clean (above the noise line), ``S`` sent, ``F`` forced,
    ``N`` noisy and unresolved.
    """
    labels, roles = [], []
    for i in params.indices:
        if params.position(i) == -1:
            labels.append(".")
            roles.append(" ")
        elif i == 1 and params.position(i) < -1:
            labels.append("." + " 0" * (-params.position(i) - 1))
            roles.append(" " * len(labels[-1]))
        labels.append(f"b{i}")
        if params.position(i) > 0:
            role = "="
        elif i in strategy.sent_bits:
            role = "S"
        elif i in strategy.forced_bits:
            role = "F"
        else:
            role = "N"
        roles.append(role)
    if params.position(params.num_bits) > 0:
        labels.append(".")
        roles.append(" ")
    widths = [max(len(a), len(b)) for a, b in zip(labels, roles)]
    top = " ".join(a.center(w) for a, w in zip(labels, widths))
    bottom = " ".join(b.center(w) for b, w in zip(roles, widths))
    return top.rstrip() + "\n" + bottom.rstrip()
