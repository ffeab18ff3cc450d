"""
Smile grids, butterfly-implied densities and the arbitrage boundary of a pricing method.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import base_models as bm
from .errors import DomainError
from .sabr_vols import (
    Method, SabrParams, equivalent_vol, q_and_z, quote_bs_vol, quote_price, standardize,
)

H_DEFAULT = 1e-4
STEP_DEFAULT = 0.01
K_MIN_DEFAULT = 0.02


@dataclass(frozen=True)
class DensityPoint:
    k: float
    density: float
    price: float


@dataclass(frozen=True)
class ArbScanResult:
    boundary_k: Optional[float]
    grid_step: float
    diff_step: float


@dataclass(frozen=True)
class SmileRow:
    k: float
    z: float
    vol_native: float
    vol_bs: float
    price: float
    error: Optional[float] = None


def method_pricer(method, p: SabrParams, t, is_call=True) -> Callable[[float], float]:
    """
    Standardized price as a function of k, each strike priced with its own equivalent volatility.

    Args:
        method: Method or its name
        p: SABR parameters
        t: time to maturity
        is_call: call prices if True, puts otherwise

    Returns:
        pricer k -> price
    """
    method = Method.parse(method)
    s = standardize(p, p.f0, t)

    def pricer(k):
        quote = equivalent_vol(method, s.at_strike(k), p.rho, p.nu)
        return quote_price(quote, k, t, is_call)

    return pricer


def black_pricer(vol, t, is_call=True):
    return lambda k: bm.black_price(k, t, vol, is_call)


def implied_density(pricer, k, h=H_DEFAULT):
    """
    Density implied by the butterfly (C(k+h) - 2C(k) + C(k-h))/h^2.

    Args:
        pricer: price function of k
        k: strike
        h: difference step, k - h > 0

    Returns:
        density (negative values signal arbitrage)
    """
    if not h > 0.0 or not k - h > 0.0:
        raise DomainError(f'need h > 0 and k - h > 0, got k={k}, h={h}')
    return (pricer(k + h) - 2.0 * pricer(k) + pricer(k - h)) / (h * h)


def density_points(pricer, ks: Sequence[float], h=H_DEFAULT):
    ks = list(ks)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise DomainError('strikes must be strictly increasing')
    return [DensityPoint(k, implied_density(pricer, k, h), pricer(k)) for k in ks]


def arbitrage_boundary(pricer, k_min=K_MIN_DEFAULT, step=STEP_DEFAULT, h=H_DEFAULT):
    """
    First strike below the money with a strictly negative implied density.

    The scan runs over k = 1 - step, 1 - 2 step, ... down to k_min.

    Args:
        pricer: price function of k
        k_min: lowest strike scanned
        step: grid step
        h: difference step of the density

    Returns:
        ArbScanResult (boundary_k is None when no negative density is found)
    """
    if not 0.0 < k_min < 1.0:
        raise DomainError(f'k_min must lie in (0, 1), got {k_min}')
    if not (step > 0.0 and h > 0.0):
        raise DomainError('step and h must be positive')
    i = 1
    while True:
        k = round(1.0 - i * step, 12)
        if k < k_min - 1e-12:
            return ArbScanResult(None, step, h)
        if implied_density(pricer, k, h) < 0.0:
            return ArbScanResult(k, step, h)
        i += 1


def refine_boundary(pricer, res: ArbScanResult, tol=1e-6):
    """
    Zero crossing of the density between the boundary and the grid point above it, by bisection.

    Returns:
        crossing strike, or None when the scan found no boundary
    """
    if res.boundary_k is None:
        return None
    lo, hi = res.boundary_k, res.boundary_k + res.grid_step
    if implied_density(pricer, hi, res.diff_step) < 0.0:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if implied_density(pricer, mid, res.diff_step) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def smile_grid(method, p: SabrParams, t, strikes: Sequence[float], ref_vols: Optional[Sequence[float]] = None):
    """
    Smile of a method on a strike grid.

    Args:
        method: Method or its name
        p: SABR parameters
        t: time to maturity
        strikes: increasing strikes in original units
        ref_vols: reference BS volatilities (original units) for the error column

    Returns:
        list of SmileRow; vol_native and vol_bs in original units, price is the call price
        in original units, error = (vol_bs - ref)/alpha
    """
    method = Method.parse(method)
    strikes = list(strikes)
    if any(x <= 0.0 for x in strikes) or any(b <= a for a, b in zip(strikes, strikes[1:])):
        raise DomainError('strikes must be positive and strictly increasing')
    if ref_vols is not None and len(ref_vols) != len(strikes):
        raise DomainError('ref_vols must match strikes in length')
    rows = []
    for i, strike in enumerate(strikes):
        s = standardize(p, strike, t)
        quote = equivalent_vol(method, s, p.rho, p.nu)
        vol_bs = quote_bs_vol(quote, s.k, t)
        err = None if ref_vols is None else (vol_bs - ref_vols[i]) / s.alpha
        rows.append(SmileRow(
            k=s.k, z=q_and_z(s, p.nu).z, vol_native=quote.to_original(p.f0).value,
            vol_bs=vol_bs, price=p.f0 * quote_price(quote, s.k, t, True), error=err,
        ))
    return rows
