"""
Special functions for CEV pricing: log-gamma, regularized incomplete gamma,
noncentral chi-squared CDF, and the standard normal CDF with its inverse.

The central pieces (incomplete gamma, normal CDF) wrap scipy.special; the
noncentral chi-squared distribution is summed here as a Poisson mixture.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as spsp

from .errors import DomainError, NumericalError

MAX_TERMS = 10000
TAIL_TOL = 1e-16


@dataclass(frozen=True)
class RegGammaArgs:
    x: float
    a: float

    def __post_init__(self):
        if not (self.x >= 0.0) or not (self.a > 0.0):
            raise DomainError(f'need x >= 0 and a > 0, got x={self.x}, a={self.a}')


@dataclass(frozen=True)
class Nc2Args:
    x: float
    r: float
    x0: float

    def __post_init__(self):
        if not (self.x >= 0.0) or not (self.r > 0.0) or not (self.x0 >= 0.0):
            raise DomainError(f'need x >= 0, r > 0, x0 >= 0, got x={self.x}, r={self.r}, x0={self.x0}')


def ln_gamma(a):
    """
    Log of the gamma function.

    Args:
        a: positive argument

    Returns:
        log Gamma(a)
    """
    if not a > 0.0:
        raise DomainError(f'ln_gamma needs a > 0, got {a}')
    return math.lgamma(a)


def reg_gamma_lower(x, a):
    """Regularized lower incomplete gamma P(a, x)."""
    args = RegGammaArgs(x, a)
    return float(spsp.gammainc(args.a, args.x))


def reg_gamma_upper(x, a):
    """
    Regularized upper incomplete gamma Q(a, x), the gamma survival function.

    Args:
        x: integration limit, x >= 0
        a: shape, a > 0

    Returns:
        Q(a, x) in [0, 1]
    """
    args = RegGammaArgs(x, a)
    return float(spsp.gammaincc(args.a, args.x))


def log_reg_gamma_upper(x, a):
    """
    log Q(a, x), accurate where Q itself underflows.

    Falls back to the asymptotic series x^(a-1) e^(-x) sum_j x^(-j) / Gamma(a-j)
    once Q drops below the normal floating range.
    """
    q = reg_gamma_upper(x, a)
    if q > 1e-280:
        return math.log(q)
    # large x: terms decrease until j ~ x, stop well before
    s, term = 0.0, 1.0
    for j in range(60):
        s += term
        term *= (a - 1 - j) / x
        if abs(term) < 1e-17 * abs(s):
            break
    return (a - 1) * math.log(x) - x - math.lgamma(a) + math.log(s)


def _poisson_weights(lam):
    """
    Poisson(lam) weights on a window around the mode, normalized to sum to one.

    Weights come from the ratio recurrence starting at the mode; the window
    grows until the geometric bound on each neglected tail is below TAIL_TOL.
    """
    if lam == 0.0:
        return 0, np.ones(1)
    mode = int(math.floor(lam))
    w_mode = math.exp(-lam + mode * math.log(lam) - math.lgamma(mode + 1))
    up, w, j = [], 1.0, mode
    while True:
        w *= lam / (j + 1)
        j += 1
        r = lam / (j + 1)
        up.append(w)
        if w * w_mode * r / (1 - r) < TAIL_TOL:
            break
        if len(up) > MAX_TERMS:
            raise NumericalError(f'noncentral chi2 series exceeded {MAX_TERMS} terms (x0/2={lam})')
    down, w, j = [], 1.0, mode
    while j > 0:
        w *= j / lam
        j -= 1
        down.append(w)
        rd = j / lam
        if w * w_mode * rd / (1 - rd) < TAIL_TOL:
            break
        if len(down) > MAX_TERMS:
            raise NumericalError(f'noncentral chi2 series exceeded {MAX_TERMS} terms (x0/2={lam})')
    if len(up) + len(down) + 1 > MAX_TERMS:
        raise NumericalError(f'noncentral chi2 series exceeded {MAX_TERMS} terms (x0/2={lam})')
    w = np.array(down[::-1] + [1.0] + up)
    return mode - len(down), w / math.fsum(w)


def _nc2_sum(args: Nc2Args, upper):
    lo, w = _poisson_weights(0.5 * args.x0)
    j = lo + np.arange(len(w), dtype=float)
    fn = spsp.gammaincc if upper else spsp.gammainc
    return math.fsum(w * fn(0.5 * args.r + j, 0.5 * args.x))


def noncentral_chi2_cdf(args: Nc2Args):
    """
    CDF of the noncentral chi-squared distribution.

    The Poisson mixture sum_j w_j P(r/2 + j, x/2), w_j = Poisson(j; x0/2), is
    summed over a window around the modal index; the window grows in both
    directions until the geometric bound on each neglected tail is below 1e-16.
    With x0 = 0 the window is the single central term.

    Args:
        args: quantile x, degrees of freedom r, noncentrality x0

    Returns:
        P(X <= x)
    """
    if args.x == 0.0:
        return 0.0
    return min(1.0, _nc2_sum(args, upper=False))


def noncentral_chi2_sf(args: Nc2Args):
    """Complementary CDF P(X > x) of the noncentral chi-squared distribution."""
    if args.x == 0.0:
        return 1.0
    return min(1.0, _nc2_sum(args, upper=True))


def normal_cdf(z):
    return float(spsp.ndtr(z))


def normal_inv_cdf(p):
    """Inverse of the standard normal CDF on the open interval (0, 1)."""
    if not 0.0 < p < 1.0:
        raise DomainError(f'normal_inv_cdf needs p in (0, 1), got {p}')
    return float(spsp.ndtri(p))
