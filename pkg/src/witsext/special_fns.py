"""Gaussian / chi-square tail functions used by every bound.

``psi(m, r)`` is the probability that an m-dimensional standard Gaussian
vector has norm at least ``r``. It is the upper regularized incomplete gamma
function ``Q(m/2, r**2/2)``, evaluated here with the classic series /
continued-fraction split at ``x = a + 1``.
"""
import math
import sys

__all__ = [
    "DomainError",
    "TailUnderflowError",
    "gamma_p",
    "gamma_q",
    "psi",
    "psi_complement",
    "c_m",
    "d_m",
    "one_minus_d_m",
    "truncated_second_moment",
]

_EPS = 1e-16
_TINY = sys.float_info.min / _EPS
_MAX_ITER = 100_000


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class TailUnderflowError(ArithmeticError):
    """A sphere probability underflowed to zero, so its reciprocal is undefined."""


def _log_prefactor(a, x):
    # log(x^a e^{-x} / Gamma(a))
    return a * math.log(x) - x - math.lgamma(a)


def _series_p(a, x):
    # P(a, x) = x^a e^{-x} / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(_log_prefactor(a, x))
    raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")


def _continued_fraction_q(a, x):
    # Modified Lentz evaluation of the continued fraction for Q(a, x).
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(_log_prefactor(a, x)) * h
    raise ArithmeticError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def _check_ax(a, x):
    if not a > 0:
        raise DomainError(f"shape parameter must be positive, got {a}")
    if not x >= 0:
        raise DomainError(f"argument must be nonnegative, got {x}")


def gamma_p(a, x):
    """Lower regularized incomplete gamma function P(a, x)."""
    _check_ax(a, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return min(1.0, _series_p(a, x))
    return max(0.0, 1.0 - _continued_fraction_q(a, x))


def gamma_q(a, x):
    """Upper regularized incomplete gamma function Q(a, x) = 1 - P(a, x)."""
    _check_ax(a, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _series_p(a, x))
    return min(1.0, _continued_fraction_q(a, x))


def _check_mr(m, r):
    if int(m) != m or m < 1:
        raise DomainError(f"dimension m must be a positive integer, got {m}")
    if not r >= 0:
        raise DomainError(f"radius r must be nonnegative, got {r}")


def psi(m, r):
    """Pr(||Z|| >= r) for Z an m-vector of iid standard Gaussians."""
    _check_mr(m, r)
    return gamma_q(m / 2.0, r * r / 2.0)


def psi_complement(m, r):
    """Pr(||Z|| < r), computed directly so that tiny values keep their precision."""
    _check_mr(m, r)
    return gamma_p(m / 2.0, r * r / 2.0)


def _sphere_prob(m, big_l):
    if not big_l > 0:
        raise DomainError(f"L must be positive, got {big_l}")
    prob = psi_complement(m, big_l * math.sqrt(m))
    if prob == 0.0:
        raise TailUnderflowError(
            f"Pr(||Z||^2 <= m L^2) underflows for m={m}, L={big_l}"
        )
    return prob


def c_m(m, big_l):
    """Inverse probability that ||Z||^2 <= m L^2; always >= 1."""
    return 1.0 / _sphere_prob(m, big_l)


def one_minus_d_m(m, big_l):
    """1 - d_m(L), evaluated without cancellation.

    Uses Q(a+1, x) - Q(a, x) = x^a e^{-x} / Gamma(a+1).
    """
    prob = _sphere_prob(m, big_l)
    a = m / 2.0
    x = m * big_l * big_l / 2.0
    gap = math.exp(a * math.log(x) - x - math.lgamma(a + 1.0))
    return gap / prob


def d_m(m, big_l):
    """Ratio Pr(||Z_{m+2}||^2 <= m L^2) / Pr(||Z_m||^2 <= m L^2), in (0, 1)."""
    return 1.0 - one_minus_d_m(m, big_l)


def truncated_second_moment(t):
    """E[Z^2 1{|Z| > t}] for a scalar standard Gaussian Z (equals psi(3, t))."""
    if not t >= 0:
        raise DomainError(f"threshold must be nonnegative, got {t}")
    return psi(3, t)
