"""
Mass at zero implied by the equivalent CEV volatility at a zero strike, the
small-time decay time T0, and the small-strike BS smile of De Marco et al.
(DMHJ), which depends on the mass at zero only.
"""

import math
from dataclasses import dataclass

from . import base_models as bm
from . import specfun as sf
from .errors import DomainError
from .sabr_vols import Method, StdInputs, cev_a_vol, cev_b_vol, check_rho


@dataclass(frozen=True)
class MassResult:
    mass: float
    zero_strike_vol: float
    t0: float
    method: Method

    @property
    def survival(self):
        return 1.0 - self.mass


def _check(s: StdInputs, nu):
    if not 0.0 < s.beta_c < 1.0:
        raise DomainError(f'mass at zero needs 0 < beta < 1, got beta={s.beta}')
    if not nu > 0.0:
        raise DomainError(f'mass at zero needs nu > 0, got {nu}')


def zero_strike_cev_vol(method, s: StdInputs, rho, nu):
    """
    Equivalent CEV volatility at k = 0 (standardized).

    With xi = nu/(beta_c alpha) this is alpha H(-xi) (1 + h0 T); for rho = 0 the
    leading factor is xi/asinh(xi).

    Args:
        method: Method.CEV_A or Method.CEV_B
        s: standardized inputs (the strike is ignored)
        rho: correlation
        nu: vol-of-vol

    Returns:
        zero-strike CEV volatility
    """
    method = Method.parse(method)
    _check(s, nu)
    s0 = s.at_strike(0.0)
    if method is Method.CEV_A:
        return cev_a_vol(s0, rho, nu).value
    if method is Method.CEV_B:
        return cev_b_vol(s0, rho, nu).value
    raise DomainError(f'zero-strike volatility needs cev-a or cev-b, got {method.value}')


def decay_time_t0(s: StdInputs, rho, nu):
    """
    Decay time T0 of the mass at zero, M_T ~ exp(-T0/T) as T -> 0.

    T0 = log^2((sqrt(1 - 2 rho xi + xi^2) + xi - rho)/(1 - rho)) / (2 nu^2), xi = nu/(beta_c alpha).

    Args:
        s: standardized inputs (strike and maturity are ignored)
        rho: correlation
        nu: vol-of-vol

    Returns:
        T0
    """
    _check(s, nu)
    check_rho(rho)
    xi = nu / (s.beta_c * s.alpha)
    vv = math.sqrt((xi - rho) ** 2 + (1.0 - rho) * (1.0 + rho))
    # log((V + xi - rho)/(1 - rho)) with V - 1 = xi (xi - 2 rho)/(V + 1)
    if xi >= rho:
        x = math.log1p((xi * (xi - 2 * rho) / (vv + 1.0) + xi) / (1.0 - rho))
    else:
        x = math.log((vv + xi - rho) / (1.0 - rho))
    return x * x / (2 * nu * nu)


def mass_at_zero(method, s: StdInputs, rho, nu):
    """
    Mass at zero M_T of the CEV model evaluated with the zero-strike CEV volatility.

    Args:
        method: Method.CEV_A or Method.CEV_B
        s: standardized inputs (the strike is ignored)
        rho: correlation
        nu: vol-of-vol

    Returns:
        MassResult
    """
    method = Method.parse(method)
    vol0 = zero_strike_cev_vol(method, s, rho, nu)
    mass = bm.cev_mass_at_zero(vol0, s.beta, s.t)
    return MassResult(mass, vol0, decay_time_t0(s, rho, nu), method)


def mass_upper_bound(put_price, k):
    """Upper bound M_T <= P(k)/k from a put price at a small strike k."""
    if not k > 0.0:
        raise DomainError(f'strike must be positive, got {k}')
    return put_price / k


def dmhj_vol(k, t, mass):
    """
    Small-strike BS volatility from the mass at zero (De Marco et al.).

    sigma = L/sqrt(T) (1 + q/L + (q^2 + 2)/(2L^2) + q/(2L^3)), L = sqrt(2|log k|), q = N^-1(M).
    The expansion stops after the four terms shown; mass = 0 returns Lee's bound L/sqrt(T).

    Args:
        k: standardized strike in (0, 1)
        t: time to maturity
        mass: mass at zero in [0, 1)

    Returns:
        BS volatility
    """
    if not 0.0 < k < 1.0:
        raise DomainError(f'DMHJ expansion is valid for 0 < k < 1, got {k}')
    if not t > 0.0:
        raise DomainError(f'time to maturity must be positive, got {t}')
    if not 0.0 <= mass < 1.0:
        raise DomainError(f'mass at zero must lie in [0, 1), got {mass}')
    ll = math.sqrt(-2.0 * math.log(k))
    if mass == 0.0:
        return ll / math.sqrt(t)
    q = sf.normal_inv_cdf(mass)
    return ll / math.sqrt(t) * (1.0 + q / ll + (q * q + 2.0) / (2 * ll * ll) + q / (2 * ll ** 3))
