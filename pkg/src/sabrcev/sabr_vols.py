"""
Equivalent volatilities of the SABR model in standardized units.

Every formula works with k = K/F0, alpha = sigma0/F0^(1-beta), beta_c = 1-beta,
rho_c = sqrt(1-rho^2). A result sigma(k) converts back to the original scale
as sigma' = F0^(1-beta') sigma(k) where beta' is the elasticity of the base
model (1 for BS, 0 for normal, beta for CEV).

Methods:
    BS_A: Hagan et al. (2002) lognormal formula (HKLW)
    HAGAN_N: Hagan et al. (2002) normal formula
    OBLOJ_BS, OBLOJ_N: Obloj (2008) leading-order correction
    HAGAN14_N: Hagan et al. (2014) normal formula
    BS_B: Paulot (2015) lognormal formula
    CEV_A, CEV_B: equivalent CEV volatility, without and with Paulot's refinement
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import base_models as bm
from .errors import DomainError, NumericalError

RHO_MAX = 1.0 - 1e-8
Z_SERIES = 1e-4     # H, x by series
Z_SERIES_A3 = 1e-2  # log(V/H^2)/z^2 by series
Z_QUAD = 0.05       # A2 by quadrature
L_SERIES = 0.1      # log(sinh(w)/w) by series
ETA_WINDOW = 1e-9   # eta = 1 branch of G(t)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)
_GL_X, _GL_W = 0.5 * (_GL_X + 1.0), 0.5 * _GL_W


class Method(Enum):
    BS_A = 'bs-a'
    HAGAN_N = 'hagan-n'
    OBLOJ_BS = 'obloj-bs'
    OBLOJ_N = 'obloj-n'
    HAGAN14_N = 'hagan14-n'
    BS_B = 'bs-b'
    CEV_A = 'cev-a'
    CEV_B = 'cev-b'

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace('_', '-')
        for m in cls:
            if m.value == key:
                return m
        valid = ', '.join(m.value for m in cls)
        raise DomainError(f'unknown method {name!r}; valid methods: {valid}')


class BaseModel(Enum):
    BS = 'BS'
    NORMAL = 'Normal'
    CEV = 'CEV'


class Scale(Enum):
    STANDARDIZED = 'standardized'
    ORIGINAL = 'original'


@dataclass(frozen=True)
class SabrParams:
    """SABR parameters (F0, sigma0, beta, rho, nu)."""
    f0: float
    sigma0: float
    beta: float
    rho: float
    nu: float

    def __post_init__(self):
        if not self.f0 > 0.0:
            raise DomainError(f'f0 must be positive, got {self.f0}')
        if not self.sigma0 > 0.0:
            raise DomainError(f'sigma0 must be positive, got {self.sigma0}')
        if not 0.0 <= self.beta <= 1.0:
            raise DomainError(f'beta must lie in [0, 1], got {self.beta}')
        check_rho(self.rho)
        if not self.nu >= 0.0:
            raise DomainError(f'nu must be nonnegative, got {self.nu}')


def check_rho(rho):
    if not abs(rho) <= RHO_MAX:
        raise DomainError(f'|rho| must not exceed 1 - 1e-8, got {rho}')


@dataclass(frozen=True)
class StdInputs:
    alpha: float
    beta_c: float
    rho_c: float
    k: float
    t: float

    @property
    def beta(self):
        return 1.0 - self.beta_c

    def at_strike(self, k):
        return replace(self, k=k)


class QzBundle(NamedTuple):
    q: float
    z: float
    q_n: float
    q_bs: float
    z_n: float
    z_bs: float


@dataclass(frozen=True)
class VolQuote:
    """Equivalent volatility tagged with its base model. beta_base is the base-model elasticity."""
    value: float
    base_model: BaseModel
    method: Method
    scale: Scale = Scale.STANDARDIZED
    beta_base: float = 1.0

    def to_original(self, f0):
        if self.scale is Scale.ORIGINAL:
            return self
        return replace(self, value=self.value * f0 ** (1.0 - self.beta_base), scale=Scale.ORIGINAL)


class PaulotTerms(NamedTuple):
    a1: float
    a2: float
    a3: float
    t1: float
    t2: float
    eta: float
    g_t1: float
    g_t2: float


def standardize(p: SabrParams, strike, t):
    """
    Standardized inputs of the SABR model.

    Args:
        p: SABR parameters
        strike: strike price K (K = 0 allowed for zero-strike quantities; K < 0 only with beta = 0)
        t: time to maturity

    Returns:
        StdInputs
    """
    if not t > 0.0:
        raise DomainError(f'time to maturity must be positive, got {t}')
    betac = 1.0 - p.beta
    rho_c = math.sqrt((1.0 - p.rho) * (1.0 + p.rho))
    return StdInputs(alpha=p.sigma0 / p.f0 ** betac, beta_c=betac, rho_c=rho_c, k=strike / p.f0, t=t)


def _log_k(k):
    if not k > 0.0:
        raise DomainError(f'standardized strike must be positive, got {k}')
    return math.log(k)


def _q(k, betac):
    # (k^betac - 1)/betac with limits log(k) at betac = 0 and -1/betac at k = 0
    if betac == 1.0:
        return k - 1.0
    if k == 0.0 and betac > 0.0:
        return -1.0 / betac
    u = _log_k(k)
    return u if betac == 0.0 else math.expm1(betac * u) / betac


def _ratio_qn_q(k, betac):
    """(k - 1)/q, 1 at k = 1."""
    if betac == 1.0 or k == 1.0:
        return 1.0
    if k == 0.0:
        return betac
    u = math.log(k)
    return math.expm1(u) / (u if betac == 0.0 else math.expm1(betac * u) / betac)


def _ratio_qbs_q(k, betac):
    """log(k)/q, 1 at k = 1."""
    if betac == 0.0 or k == 1.0:
        return 1.0
    v = betac * _log_k(k)
    return v / math.expm1(v)


def _ratio_kb(k, beta):
    """(k^beta - 1)/(k - 1), beta at k = 1."""
    if beta == 0.0:
        return 0.0
    if beta == 1.0:
        return 1.0
    if k == 1.0:
        return beta
    if k == 0.0:
        return 1.0
    u = _log_k(k)
    return math.expm1(beta * u) / math.expm1(u)


def _kpow(k, e):
    return 1.0 if e == 0.0 else k ** e


def q_and_z(s: StdInputs, nu):
    """
    The variables q, z and their normal / BS counterparts.

    q = (k^beta_c - 1)/beta_c (log k at beta = 1), z = (nu/alpha) q. k = 0 is accepted for beta < 1.

    Args:
        s: standardized inputs
        nu: vol-of-vol

    Returns:
        QzBundle
    """
    if s.beta_c < 1.0 and s.k < 0.0:
        raise DomainError(f'negative strike needs beta = 0, got k={s.k}')
    if s.beta_c == 0.0 and s.k == 0.0:
        raise DomainError('zero strike is outside the domain for beta = 1')
    r = nu / s.alpha
    q = _q(s.k, s.beta_c)
    q_n = s.k - 1.0
    q_bs = math.log(s.k) if s.k > 0.0 else -math.inf
    return QzBundle(q, r * q, q_n, q_bs, r * q_n, r * q_bs)


def _inv_h_series(z, rho):
    r2 = rho * rho
    return 1.0 + z * (-rho / 2 + z * ((3 * r2 - 1) / 6 + z * (-(5 * r2 - 3) * rho / 8 + z * (7 * r2 * r2 / 8 - 3 * r2 / 4 + 3 / 40))))


def h_x_v(z, rho):
    """
    H = z/x(z), x(z) = log((V + z + rho)/(1 + rho)) and V = sqrt(1 + 2 rho z + z^2).

    H near z = 0 uses the series of 1/H.

    Args:
        z: z value
        rho: correlation

    Returns:
        (H, x, V)
    """
    rho_c2 = (1.0 - rho) * (1.0 + rho)
    vv = math.sqrt((z + rho) ** 2 + rho_c2)
    if abs(z) < Z_SERIES:
        inv_h = _inv_h_series(z, rho)
        return 1.0 / inv_h, z * inv_h, vv
    vm1 = z * (2 * rho + z) / (vv + 1.0)  # V - 1
    if z + rho >= 0.0:
        x = math.log1p((vm1 + z) / (1.0 + rho))
    else:
        x = -math.log1p((vm1 - z) / (1.0 - rho))
    return z / x, x, vv


def _h_terms(s, rho, nu, k, first_coef):
    # (first_coef) alpha^2/(24 k^beta_c) + rho beta alpha nu/(4 k^(beta_c/2)) + (2-3rho^2) nu^2/24
    betac, beta, alpha = s.beta_c, s.beta, s.alpha
    h = (2.0 - 3.0 * rho * rho) * nu * nu / 24.0
    if first_coef != 0.0:
        h += first_coef * alpha * alpha / (24.0 * _kpow(k, betac))
    if beta * rho != 0.0:
        h += rho * beta * alpha * nu / (4.0 * _kpow(k, 0.5 * betac))
    return h


def _quote(value, base, method, s):
    beta_base = {BaseModel.BS: 1.0, BaseModel.NORMAL: 0.0, BaseModel.CEV: s.beta}[base]
    return VolQuote(value, base, method, Scale.STANDARDIZED, beta_base)


def _check_pos_k(s):
    if not s.k > 0.0:
        raise DomainError(f'standardized strike must be positive, got {s.k}')


def hagan_norm_vol(s: StdInputs, rho, nu):
    """
    Normal volatility of Hagan et al. (2002).

    Args:
        s: standardized inputs (k <= 0 allowed only for beta = 0)
        rho: correlation
        nu: vol-of-vol

    Returns:
        VolQuote with normal base model
    """
    check_rho(rho)
    betac, k = s.beta_c, s.k
    if betac < 1.0:
        _check_pos_k(s)
    zeta = (nu / s.alpha) * (k - 1.0) / _kpow(k, 0.5 * (1.0 - betac))
    hh = h_x_v(zeta, rho)[0]
    h_n = _h_terms(s, rho, nu, k, betac * betac - 1.0)
    vol = s.alpha * _ratio_qn_q(k, betac) * hh * (1.0 + h_n * s.t)
    return _quote(vol, BaseModel.NORMAL, Method.HAGAN_N, s)


def hklw_bs_vol(s: StdInputs, rho, nu):
    """
    BS volatility of Hagan et al. (2002), method BS-A.

    Args:
        s: standardized inputs
        rho: correlation
        nu: vol-of-vol

    Returns:
        VolQuote with BS base model
    """
    check_rho(rho)
    _check_pos_k(s)
    betac, k = s.beta_c, s.k
    u = math.log(k)
    kh = _kpow(k, 0.5 * betac)
    zeta = (nu / s.alpha) * kh * u
    hh = h_x_v(zeta, rho)[0]
    bu2 = (betac * u) ** 2
    den = 1.0 + bu2 / 24.0 + bu2 * bu2 / 1920.0
    h_bs = _h_terms(s, rho, nu, k, betac * betac)
    vol = s.alpha * hh / kh * (1.0 + h_bs * s.t) / den
    return _quote(vol, BaseModel.BS, Method.BS_A, s)


def obloj_vols(s: StdInputs, rho, nu):
    """
    Normal and BS volatilities with the leading-order correction of Obloj (2008).

    Returns:
        (normal VolQuote, BS VolQuote)
    """
    check_rho(rho)
    _check_pos_k(s)
    betac, k = s.beta_c, s.k
    hh = h_x_v(q_and_z(s, nu).z, rho)[0]
    h_n = _h_terms(s, rho, nu, k, betac * betac - 1.0)
    h_bs = _h_terms(s, rho, nu, k, betac * betac)
    vol_n = s.alpha * _ratio_qn_q(k, betac) * hh * (1.0 + h_n * s.t)
    vol_bs = s.alpha * _ratio_qbs_q(k, betac) * hh * (1.0 + h_bs * s.t)
    return (_quote(vol_n, BaseModel.NORMAL, Method.OBLOJ_N, s),
            _quote(vol_bs, BaseModel.BS, Method.OBLOJ_BS, s))


# log(sinh(x)/x) = sum c_n x^(2n)
_LSINHC = (1 / 6, -1 / 180, 1 / 2835, -1 / 37800, 1 / 467775)


def _lsinhc(x):
    """log(sinh(x)/x)."""
    ax = abs(x)
    if ax < L_SERIES:
        return ax * ax * _lsinhc_sq(ax)
    if ax < 20.0:
        return math.log(math.sinh(ax) / ax)
    return ax - math.log(2 * ax) + math.log1p(-math.exp(-2 * ax))


def _lsinhc_sq(x):
    """log(sinh(x)/x)/x^2 by series, |x| < 0.1."""
    x2 = x * x
    return _LSINHC[0] + x2 * (_LSINHC[1] + x2 * (_LSINHC[2] + x2 * (_LSINHC[3] + x2 * _LSINHC[4])))


def _sinhc(x):
    return 1.0 if x == 0.0 else math.sinh(x) / x


def hagan14_norm_vol(s: StdInputs, rho, nu):
    """
    Normal volatility of Hagan et al. (2014).

    The first h-term log(k^(beta/2) q/q_N) alpha^2/q^2 is evaluated as
    (L(beta_c u/2) - L(u/2)) alpha^2/q^2 with L(x) = log(sinh(x)/x), u = log k.

    Args:
        s: standardized inputs (k <= 0 allowed only for beta = 0)
        rho: correlation
        nu: vol-of-vol

    Returns:
        VolQuote with normal base model
    """
    check_rho(rho)
    betac, k, alpha = s.beta_c, s.k, s.alpha
    qz = q_and_z(s, nu)
    hh = h_x_v(qz.z, rho)[0]
    h = (2.0 - 3.0 * rho * rho) * nu * nu / 24.0
    if betac < 1.0:
        _check_pos_k(s)
        v = 0.5 * math.log(k)
        w = betac * v
        if abs(v) < L_SERIES:
            v2, ser, pv, pb = v * v, 0.0, 1.0, betac * betac
            for c in _LSINHC:
                ser += c * pv * (pb - 1.0)
                pv *= v2
                pb *= betac * betac
            h += alpha * alpha * ser / (4.0 * math.exp(2 * w) * _sinhc(w) ** 2)
        else:
            h += alpha * alpha * (_lsinhc(w) - _lsinhc(v)) / (qz.q * qz.q)
        h += 0.25 * rho * _ratio_kb(k, s.beta) * alpha * nu
    vol = alpha * _ratio_qn_q(k, betac) * hh * (1.0 + h * s.t)
    return _quote(vol, BaseModel.NORMAL, Method.HAGAN14_N, s)


# log(V/H^2)/z^2 = sum c_i(rho) z^i
def _a3_series(z, rho):
    r2 = rho * rho
    c = (
        -(3 * r2 - 2) / 12,
        rho * (6 * r2 - 5) / 12,
        -(1305 * r2 ** 2 - 1380 * r2 + 184) / 1440,
        rho * (1170 * r2 ** 2 - 1515 * r2 + 394) / 720,
        -(531090 * r2 ** 3 - 816480 * r2 ** 2 + 314559 * r2 - 18016) / 181440,
        rho * (321300 * r2 ** 3 - 572670 * r2 ** 2 + 292068 * r2 - 37315) / 60480,
        -(141027075 * r2 ** 4 - 286108200 * r2 ** 3 + 181572300 * r2 ** 2 - 36921960 * r2 + 1175168) / 14515200,
    )
    out = 0.0
    for ci in reversed(c):
        out = out * z + ci
    return out


def _a1(s):
    betac = s.beta_c
    if betac == 0.0:
        return 0.0
    w = 0.5 * betac * math.log(s.k)
    if abs(w) < L_SERIES:
        return s.alpha ** 2 * 0.25 * betac * betac * _lsinhc_sq(w) * math.exp(-2 * w) / _sinhc(w) ** 2
    q = _q(s.k, betac)
    return s.alpha ** 2 * _lsinhc(w) / (q * q)


def _a3(z, hh, vv, rho, nu):
    if nu == 0.0:
        return 0.0
    if abs(z) < Z_SERIES_A3:
        return 0.5 * nu * nu * _a3_series(z, rho)
    log_v = 0.5 * math.log1p(z * (2 * rho + z))
    return 0.5 * nu * nu * (log_v - 2.0 * math.log(hh)) / (z * z)


def _g(t, rho, rho_c, eta):
    """G(t) by its three-branch closed form."""
    e = eta - rho_c
    a = rho + e * t
    g = math.atan(t)
    if eta == 0.0:
        return g
    if abs(eta - 1.0) < ETA_WINDOW:
        return g + eta / a
    if eta < 1.0:
        sq = math.sqrt(1.0 - eta * eta)
        num = a + sq
        if num == 0.0:
            return g
        return g + eta / (2 * sq) * math.log(abs(num / (a - sq)))
    sq = math.sqrt(eta * eta - 1.0)
    return g - eta / sq * math.atan(a / sq)


def _dg_quad(z, vv, rho, rho_c, eta):
    """(G(t2) - G(t1))/z^2 by Gauss-Legendre quadrature of G'(t)/(t2 - t); None if unsafe."""
    e = eta - rho_c
    t2 = (1.0 + rho) / rho_c
    dtz = -(2 * rho + z + 1.0 + vv) / ((1.0 + vv) * rho_c)  # (t2 - t1)/z
    dt = dtz * z
    a2 = rho + e * t2
    c = 2 * eta / (1.0 - rho)
    reach = abs(dt) * max(abs(2 * a2), abs(2 * a2 - e * dt))
    if not (abs(dt) < 0.25 and reach < 0.25 * c):
        return None
    d = dt * _GL_X
    t = t2 - d
    apa2 = 2 * rho + e * (t + t2)
    b = (t2 + t) / ((1 + t * t) * (1 + t2 * t2)) - 0.5 * (1.0 - rho) * apa2 / (c - d * apa2)
    return dtz * dtz * float(np.dot(_GL_W, _GL_X * b))


def _log_ratio(a2, a1):
    """log|a2/a1| for a2, a1 of equal sign."""
    if a2 == 0.0 or a1 == 0.0:
        raise NumericalError('log argument in G(t) vanished outside the removable case')
    r = (a1 - a2) / a2
    if r > -0.5:
        return -math.log1p(r)
    return math.log(abs(a2 / a1))


def _dg_closed(z, vv, rho, rho_c, eta):
    """(G(t2) - G(t1))/z^2 from the closed form, with stable differences."""
    e = eta - rho_c
    t2 = (1.0 + rho) / rho_c
    dt = -z * (2 * rho + z + 1.0 + vv) / ((1.0 + vv) * rho_c)  # t2 - t1
    t1 = t2 - dt
    dg = math.atan2(dt, 1.0 + t1 * t2)
    if eta == 0.0:
        return dg / z / z
    a2, a1 = rho + e * t2, rho + e * t1
    if abs(eta - 1.0) < ETA_WINDOW:
        # eta/a (1 + s^2/(3a^2) + s^4/(5a^4)), s^2 = 1 - eta^2
        s2 = (1.0 - eta) * (1.0 + eta)
        def ser(a):
            y = s2 / (a * a)
            return eta / a * (1.0 + y / 3.0 + y * y / 5.0)
        dg += ser(a2) - ser(a1)
    elif eta > 1.0:
        cc = math.sqrt((eta - 1.0) * (eta + 1.0))
        dg -= eta / cc * math.atan2(cc * e * dt, cc * cc + a1 * a2)
    else:
        sq = math.sqrt((1.0 - eta) * (1.0 + eta))
        # a + s and a - s, factored through e where rho +- s would cancel
        if sq - rho > 1e-4:
            # a + s = e (t - m), m = (eta + rho_c)/(s - rho); t2 - m written without cancellation
            p2 = -eta * ((1.0 + rho) * eta / (1.0 + sq) + rho_c) / (rho_c * (sq - rho))
            lp = _log_ratio(p2, p2 - dt)
        else:
            lp = _log_ratio(a2 + sq, a1 + sq)
        if rho > 0.0:
            # a - s = e (t + m'), m' = (eta + rho_c)/(rho + s)
            mp = (eta + rho_c) / (rho + sq)
            lm = _log_ratio(t2 + mp, t1 + mp)
        else:
            lm = _log_ratio(a2 - sq, a1 - sq)
        dg += eta / (2 * sq) * (lp - lm)
    return dg / z / z


def paulot_terms(s: StdInputs, rho, nu):
    """
    The O(T) terms A1, A2, A3 of Paulot (2015) and the intermediate t1, t2, eta, G.

    Args:
        s: standardized inputs (k = 0 accepted for beta < 1)
        rho: correlation
        nu: vol-of-vol

    Returns:
        PaulotTerms (eta = inf and G = nan for beta = 1, where A2 has its own closed form)
    """
    check_rho(rho)
    betac, beta, alpha, rho_c = s.beta_c, s.beta, s.alpha, s.rho_c
    qz = q_and_z(s, nu)
    z = qz.z
    hh, _, vv = h_x_v(z, rho)
    t2 = (1.0 + rho) / rho_c
    t1 = (vv + z + rho) / rho_c

    a1 = _a1(s) if s.k > 0.0 else math.nan
    a3 = _a3(z, hh, vv, rho, nu)

    if betac == 0.0:
        a2 = rho * alpha * nu / (2 * (vv + 1.0 + rho * z))
        return PaulotTerms(a1, a2, a3, t1, t2, math.inf, math.nan, math.nan)

    eta = rho_c * nu * _kpow(s.k, betac) / (betac * alpha * vv)
    g1, g2 = _g(t1, rho, rho_c, eta), _g(t2, rho, rho_c, eta)
    if beta == 0.0 or rho == 0.0 or nu == 0.0:
        a2 = 0.0
    else:
        dgz = None
        if abs(z) < Z_QUAD:
            dgz = _dg_quad(z, vv, rho, rho_c, eta)
        if dgz is None:
            dgz = _dg_closed(z, vv, rho, rho_c, eta)
        a2 = beta * rho * nu / (betac * rho_c) * (nu * dgz)
    return PaulotTerms(a1, a2, a3, t1, t2, eta, g1, g2)


def paulot_bs_vol(s: StdInputs, rho, nu):
    """
    BS volatility of Paulot (2015), method BS-B.

    Returns:
        VolQuote with BS base model
    """
    _check_pos_k(s)
    pt = paulot_terms(s, rho, nu)
    hh = h_x_v(q_and_z(s, nu).z, rho)[0]
    vol = s.alpha * _ratio_qbs_q(s.k, s.beta_c) * hh * (1.0 + hh * hh * (pt.a1 + pt.a2 + pt.a3) * s.t)
    return _quote(vol, BaseModel.BS, Method.BS_B, s)


def _cev_base(s):
    if s.beta_c == 0.0:
        return BaseModel.BS
    if s.beta_c == 1.0:
        return BaseModel.NORMAL
    return BaseModel.CEV


def cev_a_vol(s: StdInputs, rho, nu):
    """
    Equivalent CEV volatility without Paulot's refinement, method CEV-A.

    sigma_CEV/alpha = H(z) (1 + [rho/4 (k^beta - 1)/(k - 1) alpha nu + (2 - 3rho^2) nu^2/24] T).
    At beta = 0 this is the normal SABR formula, at beta = 1 a BS volatility.

    Args:
        s: standardized inputs (k = 0 gives the zero-strike volatility)
        rho: correlation
        nu: vol-of-vol

    Returns:
        VolQuote with CEV base model
    """
    check_rho(rho)
    hh = h_x_v(q_and_z(s, nu).z, rho)[0]
    h = 0.25 * rho * _ratio_kb(s.k, s.beta) * s.alpha * nu + (2.0 - 3.0 * rho * rho) * nu * nu / 24.0
    return _quote(s.alpha * hh * (1.0 + h * s.t), _cev_base(s), Method.CEV_A, s)


def cev_b_vol(s: StdInputs, rho, nu):
    """
    Equivalent CEV volatility with Paulot's refinement, method CEV-B.

    sigma_CEV/alpha = H(z) (1 + H^2 (A2 + A3) T).

    Args:
        s: standardized inputs (k = 0 gives the zero-strike volatility)
        rho: correlation
        nu: vol-of-vol

    Returns:
        VolQuote with CEV base model
    """
    z = q_and_z(s, nu).z
    hh, _, vv = h_x_v(z, rho)
    if s.beta_c == 1.0:
        # normal SABR, A2 = 0; keeps k <= 0 usable
        a23 = _a3(z, hh, vv, rho, nu)
    else:
        pt = paulot_terms(s, rho, nu)
        a23 = pt.a2 + pt.a3
    vol = s.alpha * hh * (1.0 + hh * hh * a23 * s.t)
    return _quote(vol, _cev_base(s), Method.CEV_B, s)


def equivalent_vol(method, s: StdInputs, rho, nu):
    """Dispatch to the equivalent-volatility formula of a method."""
    method = Method.parse(method)
    if method is Method.BS_A:
        return hklw_bs_vol(s, rho, nu)
    if method is Method.HAGAN_N:
        return hagan_norm_vol(s, rho, nu)
    if method is Method.OBLOJ_N:
        return obloj_vols(s, rho, nu)[0]
    if method is Method.OBLOJ_BS:
        return obloj_vols(s, rho, nu)[1]
    if method is Method.HAGAN14_N:
        return hagan14_norm_vol(s, rho, nu)
    if method is Method.BS_B:
        return paulot_bs_vol(s, rho, nu)
    if method is Method.CEV_A:
        return cev_a_vol(s, rho, nu)
    return cev_b_vol(s, rho, nu)


def quote_price(quote: VolQuote, k, t, is_call=True):
    """Standardized option price of a VolQuote under its base model."""
    if quote.base_model is BaseModel.BS:
        return bm.black_price(k, t, quote.value, is_call)
    if quote.base_model is BaseModel.NORMAL:
        return bm.bachelier_price(k, t, quote.value, is_call)
    return bm.cev_price(k, t, quote.value, quote.beta_base, is_call)


def quote_bs_vol(quote: VolQuote, k, t):
    """Standardized BS volatility equivalent to a VolQuote, inverted from the out-of-the-money price."""
    if quote.base_model is BaseModel.BS:
        return quote.value
    is_call = k >= 1.0
    return bm.implied_black_vol(quote_price(quote, k, t, is_call), k, t, is_call)


def sabr_price(method, p: SabrParams, strike, t, is_call=True):
    """
    Option price under a SABR approximation method, in original units.

    Args:
        method: Method or its name
        p: SABR parameters
        strike: strike price
        t: time to maturity
        is_call: call if True, put otherwise

    Returns:
        option price
    """
    s = standardize(p, strike, t)
    quote = equivalent_vol(method, s, p.rho, p.nu)
    return p.f0 * quote_price(quote, s.k, t, is_call)
