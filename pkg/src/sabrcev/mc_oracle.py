"""
Seeded Monte-Carlo simulation of the SABR model with absorption at zero.

Paths are simulated in standardized units (f0 = 1, sigma starting at alpha) in
fixed-size blocks. Block b draws from its own Philox stream keyed by
(seed, b), so results do not depend on how blocks are scheduled.

Schemes:
    log_euler: exact lognormal update of sigma, Euler step of F, absorption at
        the first nonpositive value.
    cev_cond: exact lognormal sigma; conditionally on the sigma path, F moves by
        the exact CEV transition (with absorption) using the trapezoidal
        integrated variance. With rho != 0 the correlated part is applied as a
        frozen-coefficient shift before each step.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .sabr_vols import SabrParams

BLOCK = 1 << 16


class Scheme(Enum):
    LOG_EULER = 'log_euler'
    CEV_COND = 'cev_cond'


@dataclass(frozen=True)
class McConfig:
    n_paths: int = 100_000
    n_steps: int = 100
    seed: int = 0
    scheme: Scheme = Scheme.LOG_EULER
    workers: int = 1

    def __post_init__(self):
        if int(self.n_paths) < 1 or int(self.n_steps) < 1:
            raise DomainError(f'n_paths and n_steps must be >= 1, got {self.n_paths}, {self.n_steps}')
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError(f'seed must be a 64-bit unsigned integer, got {self.seed}')
        if int(self.workers) < 1:
            raise DomainError(f'workers must be >= 1, got {self.workers}')
        if not isinstance(self.scheme, Scheme):
            object.__setattr__(self, 'scheme', Scheme(self.scheme))


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    n_absorbed: int
    n_paths: int
    seed: int


class TerminalSample(NamedTuple):
    f: np.ndarray         # standardized terminal prices f_T = F_T/F0
    absorbed: np.ndarray  # True where the path hit zero


def _rng(seed, block):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(block,))))


def _cev_draw(rng, f, tau, betac):
    """Exact CEV transition from f over integrated variance tau; returns (f_new, absorbed)."""
    out = np.zeros_like(f)
    live = (f > 0.0) & (tau > 0.0)
    out[(f > 0.0) & (tau <= 0.0)] = f[(f > 0.0) & (tau <= 0.0)]
    c = 0.5 / betac
    u = np.zeros_like(f)
    u[live] = f[live] ** (2 * betac) / (2 * betac * betac * tau[live])
    gam = rng.standard_gamma(c, size=f.shape)
    hit = live & (gam >= u)
    ok = live & ~hit
    n = rng.poisson(np.where(ok, u - gam, 0.0))
    y = rng.standard_gamma(n + 1.0)
    out[ok] = (2 * betac * betac * tau[ok] * y[ok]) ** c
    return out, ~(out > 0.0)


def _block_log_euler(rng, n, p, alpha, t, n_steps):
    dt = t / n_steps
    sdt = math.sqrt(dt)
    rho, nu, beta = p.rho, p.nu, p.beta
    rho_c = math.sqrt((1.0 - rho) * (1.0 + rho))
    f = np.ones(n)
    sig = np.full(n, alpha)
    dead = np.zeros(n, dtype=bool)
    drift = -0.5 * nu * nu * dt
    for _ in range(n_steps):
        z = rng.standard_normal((2, n))
        fb = f if beta == 1.0 else (np.ones(n) if beta == 0.0 else np.abs(f) ** beta)
        f = f + sig * fb * sdt * (rho * z[0] + rho_c * z[1])
        sig = sig * np.exp(nu * sdt * z[0] + drift)
        if beta > 0.0:
            dead |= f <= 0.0
            f[dead] = 0.0
    return f, dead


def _block_cev_cond(rng, n, p, alpha, t, n_steps):
    dt = t / n_steps
    sdt = math.sqrt(dt)
    rho, nu, beta = p.rho, p.nu, p.beta
    betac = 1.0 - beta
    rho_c2 = (1.0 - rho) * (1.0 + rho)
    sig = np.full(n, alpha)
    drift = -0.5 * nu * nu * dt

    if rho == 0.0 or nu == 0.0:
        tau = np.zeros(n)
        for _ in range(n_steps):
            sig_new = sig * np.exp(nu * sdt * rng.standard_normal(n) + drift)
            tau += 0.5 * (sig * sig + sig_new * sig_new) * dt
            sig = sig_new
        if beta == 1.0:
            f = np.exp(-0.5 * tau + np.sqrt(tau) * rng.standard_normal(n))
            return f, np.zeros(n, dtype=bool)
        if beta == 0.0:
            return 1.0 + np.sqrt(tau) * rng.standard_normal(n), np.zeros(n, dtype=bool)
        return _cev_draw(rng, np.ones(n), tau, betac)

    f = np.ones(n)
    dead = np.zeros(n, dtype=bool)
    for _ in range(n_steps):
        sig_new = sig * np.exp(nu * sdt * rng.standard_normal(n) + drift)
        tau = rho_c2 * 0.5 * (sig * sig + sig_new * sig_new) * dt
        fb = np.ones(n) if beta == 0.0 else np.abs(f) ** beta
        f = f + (rho / nu) * fb * (sig_new - sig)
        if beta == 0.0:
            f = f + np.sqrt(tau) * rng.standard_normal(n)
        elif beta == 1.0:
            f = f * np.exp(-0.5 * tau + np.sqrt(tau) * rng.standard_normal(n))
            dead |= f <= 0.0
            f[dead] = 0.0
        else:
            dead |= f <= 0.0
            f[dead] = 0.0
            f, d = _cev_draw(rng, f, tau, betac)
            dead |= d
        sig = sig_new
    return f, dead


def simulate_terminal(p: SabrParams, t, cfg: McConfig):
    """
    Terminal sample of the standardized price f_T = F_T/F0.

    Args:
        p: SABR parameters
        t: time to maturity
        cfg: simulation settings

    Returns:
        TerminalSample (f >= 0 for beta > 0; absorbed flags)
    """
    if not t > 0.0:
        raise DomainError(f'time to maturity must be positive, got {t}')
    alpha = p.sigma0 / p.f0 ** (1.0 - p.beta)
    n_paths, n_steps = int(cfg.n_paths), int(cfg.n_steps)
    step = _block_log_euler if cfg.scheme is Scheme.LOG_EULER else _block_cev_cond
    sizes = [min(BLOCK, n_paths - i) for i in range(0, n_paths, BLOCK)]

    def run(b):
        return step(_rng(cfg.seed, b), sizes[b], p, alpha, t, n_steps)

    if cfg.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=int(cfg.workers)) as ex:
            parts = list(ex.map(run, range(len(sizes))))
    else:
        parts = [run(b) for b in range(len(sizes))]
    return TerminalSample(np.concatenate([x[0] for x in parts]), np.concatenate([x[1] for x in parts]))


def _estimate(x, absorbed, cfg):
    n = len(x)
    mean = math.fsum(x) / n
    var = math.fsum((x - mean) ** 2) / (n - 1) if n > 1 else 0.0
    return McEstimate(mean, math.sqrt(var / n), int(np.count_nonzero(absorbed)), n, int(cfg.seed))


def mc_price(p: SabrParams, strike, t, is_call, cfg: McConfig):
    """
    Monte-Carlo option price in original units.

    Args:
        p: SABR parameters
        strike: strike price
        t: time to maturity
        is_call: call if True, put otherwise
        cfg: simulation settings

    Returns:
        McEstimate of the price with its standard error
    """
    sample = simulate_terminal(p, t, cfg)
    k = strike / p.f0
    pay = np.maximum(sample.f - k, 0.0) if is_call else np.maximum(k - sample.f, 0.0)
    est = _estimate(p.f0 * pay, sample.absorbed, cfg)
    return est


def mc_forward(p: SabrParams, t, cfg: McConfig):
    """Monte-Carlo mean of f_T = F_T/F0 (1 for a martingale)."""
    sample = simulate_terminal(p, t, cfg)
    return _estimate(sample.f, sample.absorbed, cfg)


def mc_mass_at_zero(p: SabrParams, t, cfg: McConfig):
    """
    Fraction of absorbed paths with its binomial standard error.

    Args:
        p: SABR parameters (0 < beta < 1)
        t: time to maturity
        cfg: simulation settings

    Returns:
        McEstimate of the mass at zero
    """
    if not 0.0 < p.beta < 1.0:
        raise DomainError(f'mass at zero needs 0 < beta < 1, got {p.beta}')
    sample = simulate_terminal(p, t, cfg)
    n = len(sample.f)
    m = int(np.count_nonzero(sample.absorbed))
    pm = m / n
    return McEstimate(pm, math.sqrt(pm * (1.0 - pm) / n), m, n, int(cfg.seed))
