"""
Base models on a unit forward: Black (BS), Bachelier (normal), and CEV with an
absorbing boundary at zero. All prices are undiscounted and standardized, i.e.
the forward is 1 and the strike is k = K/F0.
"""

import math

import numpy as np
import scipy.special as spsp

from . import specfun as sf
from .errors import DomainError


def _check(k, t):
    if not t > 0.0:
        raise DomainError(f'time to maturity must be positive, got {t}')
    if not k >= 0.0:
        raise DomainError(f'strike must be nonnegative, got {k}')


def intrinsic(k, is_call=True):
    return max(1.0 - k, 0.0) if is_call else max(k - 1.0, 0.0)


def black_price(k, t, vol, is_call=True):
    """
    Black price of an option on a unit forward.

    Args:
        k: standardized strike
        t: time to maturity
        vol: BS volatility
        is_call: call if True, put otherwise

    Returns:
        option price
    """
    _check(k, t)
    if vol < 0.0:
        raise DomainError(f'volatility must be nonnegative, got {vol}')
    if k == 0.0:
        return 1.0 if is_call else 0.0
    sig = vol * math.sqrt(t)
    if sig == 0.0:
        return intrinsic(k, is_call)
    d1 = -math.log(k) / sig + 0.5 * sig
    d2 = d1 - sig
    if is_call:
        return max(float(spsp.ndtr(d1) - k * spsp.ndtr(d2)), 0.0)
    return max(float(k * spsp.ndtr(-d2) - spsp.ndtr(-d1)), 0.0)


def black_vega(k, t, vol):
    if k == 0.0:
        return 0.0
    sig = vol * math.sqrt(t)
    d1 = -math.log(k) / sig + 0.5 * sig
    return math.sqrt(t) * math.exp(-0.5 * d1 * d1) / math.sqrt(2 * math.pi)


def bachelier_price(k, t, vol_n, is_call=True):
    """
    Bachelier (normal model) price on a unit forward. Negative strikes are allowed.

    Args:
        k: standardized strike
        t: time to maturity
        vol_n: normal volatility
        is_call: call if True, put otherwise

    Returns:
        option price
    """
    if not t > 0.0:
        raise DomainError(f'time to maturity must be positive, got {t}')
    if vol_n < 0.0:
        raise DomainError(f'volatility must be nonnegative, got {vol_n}')
    sig = vol_n * math.sqrt(t)
    if sig == 0.0:
        return intrinsic(k, is_call)
    m = (1.0 - k) if is_call else (k - 1.0)
    d = m / sig
    return float(m * spsp.ndtr(d) + sig * math.exp(-0.5 * d * d) / math.sqrt(2 * math.pi))


def _cev_xy(k, t, sigma, betac):
    y = 1.0 / (betac * sigma) ** 2 / t
    return k ** (2 * betac) * y, y


def cev_price(k, t, sigma, beta, is_call=True):
    """
    CEV price with absorbing boundary at zero, via the noncentral chi-squared CDF.

    beta = 1 is the Black model and beta = 0 the Bachelier model (no boundary).

    Args:
        k: standardized strike
        t: time to maturity
        sigma: CEV volatility (standardized)
        beta: elasticity in [0, 1]
        is_call: call if True, put otherwise

    Returns:
        option price
    """
    _check(k, t)
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f'beta must lie in [0, 1], got {beta}')
    if beta == 1.0:
        return black_price(k, t, sigma, is_call)
    if beta == 0.0:
        return bachelier_price(k, t, sigma, is_call)
    if sigma < 0.0:
        raise DomainError(f'volatility must be nonnegative, got {sigma}')
    if k == 0.0:
        return 1.0 if is_call else 0.0
    if sigma == 0.0:
        return intrinsic(k, is_call)

    betac = 1.0 - beta
    x, y = _cev_xy(k, t, sigma, betac)
    r = 1.0 / betac
    if is_call:
        p = sf.noncentral_chi2_sf(sf.Nc2Args(x, 2 + r, y)) - k * sf.noncentral_chi2_cdf(sf.Nc2Args(y, r, x))
    else:
        p = k * sf.noncentral_chi2_sf(sf.Nc2Args(y, r, x)) - sf.noncentral_chi2_cdf(sf.Nc2Args(x, 2 + r, y))
    return max(p, 0.0)


def cev_cdf(k, sigma, beta, t):
    """
    P(f_T <= k) under the CEV model; includes the atom at zero.

    Args:
        k: standardized level, k >= 0
        sigma: CEV volatility
        beta: elasticity in [0, 1]
        t: time

    Returns:
        probability
    """
    _check(k, t)
    if beta == 1.0:
        if k == 0.0:
            return 0.0
        sig = sigma * math.sqrt(t)
        return float(spsp.ndtr((math.log(k) + 0.5 * sig * sig) / sig))
    if beta == 0.0:
        return float(spsp.ndtr((k - 1.0) / (sigma * math.sqrt(t))))
    betac = 1.0 - beta
    x, y = _cev_xy(k, t, sigma, betac)
    return sf.noncentral_chi2_sf(sf.Nc2Args(y, 1.0 / betac, x))


def cev_mass_at_zero(sigma, beta, t):
    """
    Probability of absorption at zero by time t under the CEV model.

    Returns the exact constant 0 for beta = 0 (no boundary) and beta = 1 (never hits zero).
    """
    if not t > 0.0:
        raise DomainError(f'time must be positive, got {t}')
    if beta in (0.0, 1.0):
        return 0.0
    betac = 1.0 - beta
    return sf.reg_gamma_upper(0.5 / (betac * sigma) ** 2 / t, 0.5 / betac)


VOL_LO, VOL_HI = 1e-8, 16.0
INTRINSIC_TOL = 1e-14


def implied_black_vol(price, k, t, is_call=True):
    """
    BS volatility reproducing a given option price on a unit forward.

    The price is converted to the out-of-the-money option, then a safeguarded
    Newton iteration on log-vol solves log(price) matching inside [1e-8, 16].

    Args:
        price: option price
        k: standardized strike, k > 0
        t: time to maturity
        is_call: call if True, put otherwise

    Returns:
        BS volatility (0 when price is at intrinsic)
    """
    _check(k, t)
    if k == 0.0:
        raise DomainError('implied volatility is undefined at k = 0')
    otm_call = k >= 1.0
    # out-of-the-money price via parity
    if is_call == otm_call:
        p = price
    else:
        p = price - (1.0 - k) if is_call else price + (1.0 - k)
    if p < -INTRINSIC_TOL:
        raise DomainError(f'price {price} is below intrinsic value')
    if p <= INTRINSIC_TOL:
        return 0.0
    p_hi = black_price(k, t, VOL_HI, otm_call)
    if p > p_hi:
        cap = 1.0 if otm_call else k
        kind = 'above the no-arbitrage maximum' if p >= cap else 'above the price at the maximum volatility'
        raise DomainError(f'price {price} is {kind}')

    log_p = math.log(p)
    lo, hi = math.log(VOL_LO), math.log(VOL_HI)
    s = min(max(math.log(max(math.sqrt(2 * math.pi / t) * p, 0.3 / math.sqrt(t))), lo), hi)
    for _ in range(200):
        vol = math.exp(s)
        pv = black_price(k, t, vol, otm_call)
        if pv <= 0.0:
            lo = s
            s_new = 0.5 * (lo + hi)
        else:
            f = math.log(pv) - log_p
            if f > 0.0:
                hi = s
            else:
                lo = s
            if f == 0.0:
                return vol
            dfds = black_vega(k, t, vol) * vol / pv
            s_new = s - f / dfds if dfds > 0.0 else 0.5 * (lo + hi)
            if not lo < s_new < hi:
                s_new = 0.5 * (lo + hi)
        if abs(s_new - s) < 1e-15 or hi - lo < 1e-15:
            return math.exp(s_new)
        s = s_new
    return math.exp(s)


def black_density(k, t, vol):
    """Lognormal density of f_T at k (unit forward)."""
    sig = vol * np.sqrt(t)
    d2 = -np.log(k) / sig - 0.5 * sig
    return np.exp(-0.5 * d2 * d2) / (k * sig * np.sqrt(2 * np.pi))
