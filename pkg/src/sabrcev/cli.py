"""
Command-line front end. Writes CSV to stdout (aligned columns with --pretty).

Exit codes: 0 success, 2 input or domain error, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from . import base_models as bm
from . import reference as ref
from .diagnostics import arbitrage_boundary, implied_density, method_pricer, refine_boundary
from .errors import DomainError, NumericalError
from .mass_zero import decay_time_t0, mass_at_zero
from .mc_oracle import McConfig, Scheme, simulate_terminal
from .sabr_vols import (
    Method, SabrParams, equivalent_vol, q_and_z, quote_bs_vol, quote_price, standardize,
)

FIELDS = ('f0', 'sigma0', 'beta', 'rho', 'nu', 't')
TABLE_COLS = ('bs-a', 'bs-b', 'cev-a', 'cev-b')


@dataclass(frozen=True)
class ParamConfig:
    f0: float
    sigma0: float
    beta: float
    rho: float
    nu: float
    t: float
    name: Optional[str] = None

    def __post_init__(self):
        if not self.t > 0.0:
            raise DomainError(f'field t: time to maturity must be positive, got {self.t}')
        self.params  # validates the SABR fields

    @property
    def params(self):
        return SabrParams(self.f0, self.sigma0, self.beta, self.rho, self.nu)

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise DomainError('config must be a JSON object')
        unknown = set(d) - set(FIELDS) - {'name'}
        if unknown:
            raise DomainError(f'unknown config field(s): {", ".join(sorted(unknown))}')
        vals = {}
        for f in FIELDS:
            if f not in d:
                raise DomainError(f'missing config field: {f}')
            v = d[f]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f'field {f}: expected a finite number, got {v!r}')
            vals[f] = float(v)
        name = d.get('name')
        if name is not None and not isinstance(name, str):
            raise DomainError(f'field name: expected a string, got {name!r}')
        return cls(name=name, **vals)

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise DomainError(f'invalid JSON config: {e}') from None
        return cls.from_dict(d)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, encoding='utf-8') as fh:
                return cls.from_json(fh.read())
        except OSError as e:
            raise DomainError(f'cannot read config {path}: {e.strerror}') from None

    @classmethod
    def from_set(cls, name):
        key = str(name)
        if key not in ref.PARAM_SETS:
            raise DomainError(f'unknown parameter set {name!r}; bundled sets: {", ".join(ref.PARAM_SETS)}')
        return cls(name=key, **ref.PARAM_SETS[key])

    def to_json(self):
        d = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(d, indent=2, sort_keys=True) + '\n'


@dataclass
class RunReport:
    command: str
    config: Optional[ParamConfig]
    header: List[str]
    rows: List[list] = field(default_factory=list)
    duration: float = 0.0


def fmt(x):
    """6 significant digits; empty for None."""
    if x is None:
        return ''
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    return format(x, '.6g')


def fmt_err(x):
    return '' if x is None else format(x, '.3f')


def _config(args):
    cfg = ParamConfig.from_file(args.config) if args.config else ParamConfig.from_set(args.set or '1')
    if args.t is not None:
        cfg = ParamConfig(cfg.f0, cfg.sigma0, cfg.beta, cfg.rho, cfg.nu, args.t, cfg.name)
    return cfg


def _grid(lo, hi, step):
    if not (step > 0 and hi >= lo):
        raise DomainError('need --step > 0 and --kmax >= --kmin')
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + i * step, 12) for i in range(n + 1)]


def _strikes(args, cfg, default=None):
    """Strikes in original units from --strike or a standardized --kmin/--kmax/--step grid."""
    if args.strike is not None:
        return list(args.strike)
    if args.kmin is not None or args.kmax is not None:
        if args.kmin is None or args.kmax is None or args.step is None:
            raise DomainError('--kmin, --kmax and --step must be given together')
        return [k * cfg.f0 for k in _grid(args.kmin, args.kmax, args.step)]
    if default is not None:
        return [k * cfg.f0 for k in default]
    return [cfg.f0]


def _methods(name, default):
    if name is None:
        return list(default)
    if name == 'all':
        return list(Method)
    return [Method.parse(name)]


def _ref_row(cfg, k):
    if cfg.name not in ref.TABLES:
        return None
    for row in ref.TABLES[cfg.name]:
        if abs(row[0] - k) < 1e-9:
            return row
    return None


def cmd_vol(args, cfg):
    p = cfg.params
    header = ['method', 'strike', 'k', 'z', 'base', 'vol_native', 'vol_bs', 'price', 'vol_exact', 'error']
    rows = []
    for m in _methods(args.method, [Method.CEV_B]):
        for strike in _strikes(args, cfg):
            s = standardize(p, strike, cfg.t)
            quote = equivalent_vol(m, s, p.rho, p.nu)
            vol_bs = quote_bs_vol(quote, s.k, cfg.t)
            price = p.f0 * quote_price(quote, s.k, cfg.t, True)
            r = _ref_row(cfg, s.k)
            exact = r[3] if r else None
            err = (vol_bs - exact) / s.alpha if r else None
            rows.append([m.value, fmt(strike), fmt(s.k), fmt(q_and_z(s, p.nu).z), quote.base_model.value,
                         fmt(quote.to_original(p.f0).value), fmt(vol_bs), fmt(price), fmt(exact), fmt_err(err)])
    return header, rows


def cmd_price(args, cfg):
    p = cfg.params
    header = ['method', 'strike', 'k', 'type', 'price']
    rows = []
    for m in _methods(args.method, [Method.CEV_B]):
        for strike in _strikes(args, cfg):
            s = standardize(p, strike, cfg.t)
            quote = equivalent_vol(m, s, p.rho, p.nu)
            price = p.f0 * quote_price(quote, s.k, cfg.t, not args.put)
            rows.append([m.value, fmt(strike), fmt(s.k), 'put' if args.put else 'call', fmt(price)])
    return header, rows


def cmd_impvol(args, cfg):
    if args.price is None:
        raise DomainError('impvol needs --price')
    header = ['strike', 'k', 'type', 'price', 'vol_bs']
    rows = []
    for strike in _strikes(args, cfg):
        k = strike / cfg.f0
        vol = bm.implied_black_vol(args.price / cfg.f0, k, cfg.t, not args.put)
        rows.append([fmt(strike), fmt(k), 'put' if args.put else 'call', fmt(args.price), fmt(vol)])
    return header, rows


def cmd_mass(args, cfg):
    p = cfg.params
    s = standardize(p, p.f0, cfg.t)
    header = ['method', 't', 'zero_strike_vol', 'mass', 'survival', 't0']
    rows = []
    for m in _methods(args.method, [Method.CEV_A, Method.CEV_B]):
        res = mass_at_zero(m, s, p.rho, p.nu)
        vol0 = res.zero_strike_vol * p.f0 ** (1.0 - p.beta)
        rows.append([m.value, fmt(cfg.t), fmt(vol0), fmt(res.mass), fmt(res.survival), fmt(res.t0)])
    return header, rows


def cmd_t0(args, cfg):
    p = cfg.params
    s = standardize(p, p.f0, cfg.t)
    xi = p.nu / (s.beta_c * s.alpha) if s.beta_c > 0 else math.inf
    return ['xi', 't0'], [[fmt(xi), fmt(decay_time_t0(s, p.rho, p.nu))]]


def cmd_density(args, cfg):
    p = cfg.params
    header = ['method', 'k', 'density', 'price']
    rows = []
    ks = [x / cfg.f0 for x in _strikes(args, cfg, default=_grid(0.05, 2.0, 0.05))]
    for m in _methods(args.method, [Method.CEV_B]):
        pricer = method_pricer(m, p, cfg.t)
        for k in ks:
            rows.append([m.value, fmt(k), fmt(implied_density(pricer, k, args.h)), fmt(p.f0 * pricer(k))])
    return header, rows


def cmd_arbscan(args, cfg):
    p = cfg.params
    header = ['method', 'boundary_k', 'crossing_k', 'grid_step', 'diff_step']
    rows = []
    for m in _methods(args.method, list(Method)):
        pricer = method_pricer(m, p, cfg.t)
        res = arbitrage_boundary(pricer, args.kmin or 0.02, args.step or 0.01, args.h)
        cross = refine_boundary(pricer, res)
        rows.append([m.value, fmt(res.boundary_k), fmt(cross), fmt(res.grid_step), fmt(res.diff_step)])
    return header, rows


def cmd_mc(args, cfg):
    p = cfg.params
    mc = McConfig(args.paths, args.steps, args.seed, Scheme(args.scheme), args.workers)
    sample = simulate_terminal(p, cfg.t, mc)
    n = len(sample.f)
    header = ['strike', 'k', 'type', 'price', 'std_error', 'mass', 'mass_se', 'n_absorbed', 'n_paths', 'n_steps', 'seed', 'scheme']
    m = int(sample.absorbed.sum())
    pm = m / n
    rows = []
    for strike in _strikes(args, cfg):
        k = strike / p.f0
        pay = np.maximum(k - sample.f if args.put else sample.f - k, 0.0)
        mean = math.fsum(pay) / n
        var = math.fsum((pay - mean) ** 2) / max(n - 1, 1)
        rows.append([fmt(strike), fmt(k), 'put' if args.put else 'call', fmt(p.f0 * mean),
                     fmt(p.f0 * math.sqrt(var / n)), fmt(pm), fmt(math.sqrt(pm * (1 - pm) / n)),
                     m, n, int(args.steps), int(args.seed), args.scheme])
    return header, rows


def reproduce_tables(set_id):
    """
    Standardized BS-volatility errors of BS-A, BS-B, CEV-A and CEV-B on a bundled set.

    Returns:
        (header, rows) with the exact BS volatility and price from the reference data.
        The BS-C column is not computed.
    """
    key = str(set_id)
    if key not in ref.TABLES:
        raise DomainError(f'no reference table for set {set_id!r}; available: {", ".join(ref.TABLES)}')
    cfg = ParamConfig.from_set(key)
    p = cfg.params
    header = ['k', 'z', *TABLE_COLS, 'vol_exact', 'price_exact']
    rows = []
    for k, _, _, vol_exact, price in ref.TABLES[key]:
        s = standardize(p, k * p.f0, cfg.t)
        errs = []
        for m in TABLE_COLS:
            quote = equivalent_vol(m, s, p.rho, p.nu)
            errs.append(fmt_err((quote_bs_vol(quote, s.k, cfg.t) - vol_exact) / s.alpha))
        rows.append([fmt(k), fmt_err(q_and_z(s, p.nu).z), *errs, fmt(vol_exact), fmt(price)])
    return header, rows


def cmd_tables(args, cfg):
    print('note: BS-C (O(T^3) expansion) is not computed; see the reference data module for its printed values',
          file=sys.stderr)
    return reproduce_tables(args.set or '1')


COMMANDS = {
    'vol': cmd_vol, 'price': cmd_price, 'impvol': cmd_impvol, 'mass': cmd_mass, 't0': cmd_t0,
    'density': cmd_density, 'arbscan': cmd_arbscan, 'mc': cmd_mc, 'tables': cmd_tables,
}


def build_parser():
    ap = argparse.ArgumentParser(prog='sabrcev', description='SABR equivalent-volatility toolkit')
    sub = ap.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group()
        src.add_argument('--set', help='bundled parameter set: ' + ', '.join(ref.PARAM_SETS))
        src.add_argument('--config', help='JSON file with f0, sigma0, beta, rho, nu, t')
        sp.add_argument('--t', type=float, help='override the maturity')
        sp.add_argument('--method', help='method name (' + ', '.join(m.value for m in Method) + ') or all')
        sp.add_argument('--strike', type=float, action='append', help='strike in original units (repeatable)')
        sp.add_argument('--kmin', type=float, help='lowest standardized strike of a grid')
        sp.add_argument('--kmax', type=float, help='highest standardized strike of a grid')
        sp.add_argument('--step', type=float, help='grid step')
        sp.add_argument('--put', action='store_true', help='put instead of call')
        sp.add_argument('--price', type=float, help='option price in original units (impvol)')
        sp.add_argument('--h', type=float, default=1e-4, help='density difference step')
        sp.add_argument('--paths', type=int, default=100_000)
        sp.add_argument('--steps', type=int, default=100)
        sp.add_argument('--seed', type=int, default=0)
        sp.add_argument('--scheme', default='log_euler', choices=[s.value for s in Scheme])
        sp.add_argument('--workers', type=int, default=1)
        sp.add_argument('--pretty', action='store_true', help='aligned table instead of CSV')
        sp.add_argument('--report', action='store_true', help='echo a run report on stderr')
    return ap


def render(header, rows, pretty=False):
    if pretty:
        cols = [header] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
        return ''.join('  '.join(c.rjust(w) for c, w in zip(r, widths)) + '\n' for r in cols)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\r\n')
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def execute(argv):
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    if args.command == 'tables':
        cfg = None
    else:
        cfg = _config(args)
    header, rows = COMMANDS[args.command](args, cfg)
    report = RunReport(' '.join(argv), cfg, list(header), rows, time.perf_counter() - t0)
    return args, report


def run(argv=None):
    """
    Run a subcommand.

    Args:
        argv: argument list (defaults to sys.argv[1:])

    Returns:
        exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, report = execute(argv)
    except SystemExit as e:  # argparse
        return int(e.code or 0)
    except DomainError as e:
        print(f'error: {e}', file=sys.stderr)
        return 2
    except NumericalError as e:
        print(f'numerical failure: {e}', file=sys.stderr)
        return 3
    sys.stdout.write(render(report.header, report.rows, args.pretty))
    if args.report:
        name = report.config.name if report.config else args.set
        print(f'# {report.command} | config={name} | rows={len(report.rows)} | {report.duration:.3f}s',
              file=sys.stderr)
    return 0


def main():
    sys.exit(run())
