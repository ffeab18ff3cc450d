import math
from dataclasses import replace

import numpy as np
import pytest

from sabrcev import base_models as bm
from sabrcev import mass_zero as mz
from sabrcev import sabr_vols as sv
from sabrcev.errors import DomainError
from sabrcev.reference import MASS_BOUND_SET3, MASS_SET3, PARAM_SETS, SURVIVAL, TABLES
from sabrcev.sabr_vols import SabrParams

import oracles as orc


def std(set_id, t=None, **kw):
    d = dict(PARAM_SETS[set_id])
    d.update(kw)
    tt = d.pop('t') if t is None else (d.pop('t'), t)[1]
    p = SabrParams(**d)
    return p, sv.standardize(p, p.f0, tt)


def test_zero_strike_rho_zero_leading_factor():
    p, s = std('1')
    xi = p.nu / (s.beta_c * s.alpha)
    hz = sv.h_x_v(-xi, 0.0)[0]
    assert hz == pytest.approx(xi / math.asinh(xi), rel=1e-14)
    v = mz.zero_strike_cev_vol('cev-a', s, 0.0, p.nu)
    assert v == pytest.approx(s.alpha * xi / math.asinh(xi) * (1 + p.nu ** 2 / 12 * s.t), rel=1e-14)


def test_zero_strike_small_nu():
    p, s = std('3')
    for m in ('cev-a', 'cev-b'):
        assert mz.zero_strike_cev_vol(m, s, p.rho, 1e-9) == pytest.approx(s.alpha, rel=1e-8)


@pytest.mark.parametrize('method', ['cev-a', 'cev-b'])
@pytest.mark.parametrize('set_id', ['1', '3', 'mass-base', 'survival-base'])
def test_zero_strike_vs_oracle(method, set_id):
    p, s = std(set_id)
    ref = orc.zero_strike_vol(method, s.alpha, p.beta, p.rho, p.nu, s.t)
    assert mz.zero_strike_cev_vol(method, s, p.rho, p.nu) == pytest.approx(float(ref), rel=1e-12)


def test_zero_strike_domain():
    p, s = std('3')
    with pytest.raises(DomainError):
        mz.zero_strike_cev_vol('cev-a', s, p.rho, 0.0)
    with pytest.raises(DomainError):
        mz.zero_strike_cev_vol('bs-b', s, p.rho, p.nu)
    s1 = sv.standardize(SabrParams(1.0, 0.2, 1.0, 0.0, 0.3), 1.0, 1.0)
    with pytest.raises(DomainError):
        mz.mass_at_zero('cev-b', s1, 0.0, 0.3)


@pytest.mark.parametrize('method', ['cev-a', 'cev-b'])
def test_set3_mass(method):
    p, s = std('3')
    res = mz.mass_at_zero(method, s, p.rho, p.nu)
    assert res.mass == pytest.approx(MASS_SET3[method], abs=5e-4)
    assert res.method.value == method
    assert res.survival == pytest.approx(1 - res.mass)


def test_mass_is_cev_mass_with_zero_strike_vol():
    p, s = std('3')
    for m in ('cev-a', 'cev-b'):
        res = mz.mass_at_zero(m, s, p.rho, p.nu)
        assert res.mass == pytest.approx(bm.cev_mass_at_zero(res.zero_strike_vol, p.beta, s.t), rel=1e-12)
        assert res.mass == pytest.approx(bm.cev_cdf(0.0, res.zero_strike_vol, p.beta, s.t), rel=1e-12)


@pytest.mark.parametrize('overrides, expected', SURVIVAL)
def test_survival_cev_b(overrides, expected):
    p, s = std('survival-base', **overrides)
    assert mz.mass_at_zero('cev-b', s, p.rho, p.nu).survival == pytest.approx(expected, abs=5e-4)


def test_survival_cev_a_close_to_cev_b():
    # the two zero-strike vols differ only in the O(T) term; their survivals stay within 1e-3 here
    for overrides, _ in SURVIVAL:
        p, s = std('survival-base', **overrides)
        a = mz.mass_at_zero('cev-a', s, p.rho, p.nu).survival
        b = mz.mass_at_zero('cev-b', s, p.rho, p.nu).survival
        assert a == pytest.approx(b, abs=1e-3)


def test_mass_monotone_in_t_and_nu():
    p, s = std('mass-base')
    ts = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0]
    ms = [mz.mass_at_zero('cev-b', replace(s, t=t), p.rho, p.nu).mass for t in ts]
    assert all(b > a for a, b in zip(ms, ms[1:]))
    nus = [0.05, 0.1, 0.2, 0.3, 0.4, 0.6]
    cases = [('3', 'cev-a'), ('3', 'cev-b'), ('mass-base', 'cev-b')]
    for set_id, m in cases:
        p, s = std(set_id)
        ms = [mz.mass_at_zero(m, s, p.rho, nu).mass for nu in nus]
        assert all(b > a for a, b in zip(ms, ms[1:]))


def test_cev_a_mass_dip_in_nu():
    # with rho = -0.5 the negative rho alpha nu/4 term wins at small nu: CEV-A mass dips before rising
    p, s = std('mass-base')
    ms = [mz.mass_at_zero('cev-a', s, p.rho, nu).mass for nu in (0.05, 0.1, 0.2, 0.4)]
    assert ms[1] < ms[0] and ms[3] > ms[2]
    assert max(ms) - min(ms) < 2e-3


def test_t0_closed_form():
    p, s = std('mass-base')
    ref = orc.t0_closed(s.alpha, p.beta, p.rho, p.nu)
    assert mz.decay_time_t0(s, p.rho, p.nu) == pytest.approx(float(ref), rel=1e-13)
    assert mz.decay_time_t0(s, p.rho, p.nu) == pytest.approx(0.236023, abs=5e-7)
    # independent of T and of the method
    assert mz.decay_time_t0(replace(s, t=7.0), p.rho, p.nu) == mz.decay_time_t0(s, p.rho, p.nu)
    assert mz.mass_at_zero('cev-a', s, p.rho, p.nu).t0 == mz.mass_at_zero('cev-b', s, p.rho, p.nu).t0


def test_t0_rho_zero_and_small_xi():
    p, s = std('survival-base')
    xi = p.nu / (s.beta_c * s.alpha)
    assert mz.decay_time_t0(s, 0.0, p.nu) == pytest.approx(math.asinh(xi) ** 2 / (2 * p.nu ** 2), rel=1e-14)
    nu = 1e-6
    assert mz.decay_time_t0(s, 0.0, nu) == pytest.approx(1 / (2 * s.beta_c ** 2 * s.alpha ** 2), rel=1e-9)
    for rho in (-0.9, -0.4, 0.3, 0.8):
        ref = orc.t0_closed(s.alpha, p.beta, rho, 0.3)
        assert mz.decay_time_t0(s, rho, 0.3) == pytest.approx(float(ref), rel=1e-13)


def test_decay_ratio():
    p, s = std('mass-base')
    t0 = mz.decay_time_t0(s, p.rho, p.nu)
    for m in ('cev-a', 'cev-b'):
        ratios = []
        for frac in (1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01):
            t = t0 * frac
            mass = mz.mass_at_zero(m, replace(s, t=t), p.rho, p.nu).mass
            ratios.append(-t * math.log(mass) / t0)
        assert all(b <= a for a, b in zip(ratios, ratios[1:]))
        at50 = -t0 / 50 * math.log(mz.mass_at_zero(m, replace(s, t=t0 / 50), p.rho, p.nu).mass) / t0
        assert 0.9 <= at50 <= 1.1


def test_methods_converge_as_t_shrinks():
    p, s = std('mass-base')
    t0 = mz.decay_time_t0(s, p.rho, p.nu)
    gaps = []
    for frac in (1.0, 0.1, 0.02):
        t = t0 * frac
        la = math.log(mz.mass_at_zero('cev-a', replace(s, t=t), p.rho, p.nu).mass)
        lb = math.log(mz.mass_at_zero('cev-b', replace(s, t=t), p.rho, p.nu).mass)
        gaps.append(abs(la - lb) * t)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_dmhj_examples():
    assert mz.dmhj_vol(math.exp(-2), 1.0, 0.5) == pytest.approx(2.5, rel=1e-14)
    assert mz.dmhj_vol(0.3, 2.0, 0.0) == pytest.approx(math.sqrt(2 * abs(math.log(0.3)) / 2.0), rel=1e-15)
    ratios = [mz.dmhj_vol(k, 1.0, 0.2) / math.sqrt(2 * abs(math.log(k))) for k in (1e-4, 1e-20, 1e-100, 1e-300)]
    assert all(abs(b - 1) < abs(a - 1) for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 1) < 0.1


def test_dmhj_set3():
    k, exact = TABLES['3'][0][0], TABLES['3'][0][3]
    assert mz.dmhj_vol(k, 20.0, MASS_BOUND_SET3) == pytest.approx(exact, abs=0.05)


def test_dmhj_decreasing():
    ks = np.linspace(0.01, 0.5, 50)
    vals = [mz.dmhj_vol(k, 1.0, 0.3) for k in ks]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize('k, mass', [(1.0, 0.3), (1.5, 0.3), (0.0, 0.3), (0.5, 1.0), (0.5, -0.1)])
def test_dmhj_domain(k, mass):
    with pytest.raises(DomainError):
        mz.dmhj_vol(k, 1.0, mass)


def test_mass_upper_bound_set3():
    # published call price at k = 0.1; the put follows from parity
    k, _, _, _, call = TABLES['3'][0]
    assert mz.mass_upper_bound(call - (1 - k), k) == pytest.approx(MASS_BOUND_SET3, abs=5e-4)
    with pytest.raises(DomainError):
        mz.mass_upper_bound(0.1, 0.0)
