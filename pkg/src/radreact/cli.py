"""Command-line front end.

Every subcommand is a pure function of argv. Single results go to stdout
as JSON (fixed key order) or a one-row CSV; tables go to stdout or
``--out PATH``. Exit status: 0 success, 2 bad arguments or domain errors,
3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import commutator as comm
from .constants import CGS, OscillatorParams
from .errors import DomainError, NonConvergenceError, PreconditionError, TruncationError
from .quadrature import QuadratureSpec
from .response import (DriveSpec, integrate_time_domain, reduced_steady_amplitude,
                       steady_amplitude)
from .spectrum import coth_factor, spectral_density, unruh_temperature
from .thermofield import build_fock, thermal_expectations
from .worldline import hyperbolic_worldline, lad_self_force, samples_to_csv

__all__ = ["main", "run", "SweepConfig", "sweep_values"]

SWEEP_VARIABLES = {
    # sweep variable -> (subcommands that accept it, flag it sets)
    "s": ({"commutator", "uncertainty", "spectrum", "trajectory"}, "--s"),
    "alpha": ({"thermofield"}, "--alpha"),
    "omega_drive": ({"trajectory"}, None),
    "n_max": ({"thermofield"}, "--nmax"),
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _num(value):
    """Full-precision text for a float; ints pass through."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json(record):
    return json.dumps({k: _num(v) if isinstance(v, (int, float, np.floating, np.integer)) else v
                       for k, v in record.items()}, allow_nan=True)


def _csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(list(rows[0].keys()))
        for row in rows:
            writer.writerow([_fmt(_num(v)) if isinstance(v, (int, float, np.floating, np.integer)) else v
                             for v in row.values()])
    return buf.getvalue()


def _float_list(text, n, name):
    parts = text.split(",")
    if len(parts) != n:
        raise _UsageError(f"{name} expects {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise _UsageError(f"{name}: cannot parse {text!r}") from None


@dataclass(frozen=True)
class SweepConfig:
    variable: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"unknown sweep variable {self.variable!r}")
        if self.points < 2:
            raise DomainError("points must be >= 2")
        if not self.start < self.stop:
            raise DomainError("start must be < stop")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"scale must be linear or log, got {self.scale!r}")
        if self.scale == "log" and not self.start > 0:
            raise DomainError("log scale requires start > 0")


def sweep_values(cfg: SweepConfig):
    if cfg.scale == "log":
        values = np.geomspace(cfg.start, cfg.stop, cfg.points)
    else:
        values = np.linspace(cfg.start, cfg.stop, cfg.points)
    if cfg.variable == "n_max":
        return [int(round(v)) for v in values]
    return [float(v) for v in values]


# -- subcommands -----------------------------------------------------------

def _spec_from(args):
    return QuadratureSpec(rel_tol=args.tol)


def _cmd_commutator(args):
    window = comm.parse_window(args.window)
    res = comm.commutator_numeric(args.s, args.g, window, _spec_from(args))
    return {"s": args.s, "g": args.g, "window": window.label(), "value": res.value,
            "error_estimate": res.error_estimate, "evaluations": res.evaluations}, None


def _cmd_uncertainty(args):
    window = comm.parse_window(args.window)
    res = comm.uncertainty_product(args.s, args.g, window, _spec_from(args))
    return {"s": args.s, "g": args.g, "window": window.label(), "dx2": res.dx2.value,
            "dp2": res.dp2.value, "product": res.product,
            "closed_form": comm.commutator_closed_form(args.s)}, None


def _cmd_spectrum(args):
    u0, u1, n = _float_list(args.sweep, 3, "--sweep")
    cfg = SweepConfig("s", u0, u1, int(n), args.scale)  # reuse validation
    accel = args.s * args.omega0 * CGS.c
    rows = []
    for u in sweep_values(cfg):
        p = spectral_density(u * args.omega0, accel)
        rows.append({"omega": p.omega, "density": p.density,
                     "vacuum_part": p.vacuum_part, "thermal_part": p.thermal_part})
    return {"s": args.s, "omega0": args.omega0, "points": len(rows),
            "coth_factor": coth_factor(args.s)}, rows


def _cmd_unruh(args):
    return {"accel": args.accel, "temperature": unruh_temperature(args.accel)}, None


def _cmd_trajectory(args):
    e0, w, phi = _float_list(args.drive, 3, "--drive")
    params = OscillatorParams.from_dimensionless(args.s, args.g, omega0=args.omega0)
    drive = DriveSpec(e0, w, phi)
    rec = integrate_time_domain(drive, params, args.duration, args.dt,
                                require_steady_state=True)
    fitted = rec.steady_state_amplitude(w)
    analytic = steady_amplitude(drive, params)
    reduced = reduced_steady_amplitude(drive, params)
    rel = abs(abs(fitted) - abs(analytic)) / abs(analytic) if analytic != 0 else abs(fitted)
    summary = {"omega0": args.omega0, "s": args.s, "g": args.g, "omega_drive": w,
               "fitted_amplitude": abs(fitted), "analytic_amplitude": abs(analytic),
               "reduced_amplitude": abs(reduced), "relative_error": rel,
               "steps": len(rec.times) - 1}
    return summary, rec.to_csv()


def _cmd_worldline(args):
    if not args.tau_range > 0:
        raise DomainError("--tau-range must be > 0")
    w = hyperbolic_worldline(args.accel)
    c = CGS.c
    # --tau-range is the rapidity range a tau / c.
    taus = np.linspace(-args.tau_range, args.tau_range, args.points) * c / args.accel
    worst = 0.0
    for tau in taus:
        d = lad_self_force(w, tau, CGS.gamma)
        worst = max(worst, float(np.linalg.norm(d.total_self) / np.linalg.norm(d.schott)))
    return {"accel": args.accel, "tau_range": args.tau_range, "points": args.points,
            "max_self_force_residual": worst}, samples_to_csv(w, taus)


def _cmd_thermofield(args):
    r = thermal_expectations(build_fock(args.nmax), args.alpha)
    return {"alpha": r.alpha, "theta": r.theta, "number": r.number,
            "commutator": r.commutator, "closed_number": r.closed_number,
            "closed_commutator": r.closed_commutator, "symmetrized": r.symmetrized,
            "n_max": args.nmax}, None


def _positive_int(text):
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return value


def _build_parser():
    parser = _Parser(prog="radreact", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, helptext, fmt="json"):
        p = sub.add_parser(name, help=helptext, allow_abbrev=False)
        p.set_defaults(func=fn, default_format=fmt)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--out", default=None, help="write the table here")
        return p

    p = add("commutator", _cmd_commutator, "[x,p] in units of i hbar")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--window", required=True, help="paper | sym:W | full:L")
    p.add_argument("--tol", type=float, default=1e-10)

    p = add("uncertainty", _cmd_uncertainty, "<x^2>, <p^2> and their product")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--window", required=True, help="paper | sym:W | full:L")
    p.add_argument("--tol", type=float, default=1e-10)

    p = add("spectrum", _cmd_spectrum, "spectral density over omega/omega0", fmt="csv")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--omega0", type=float, default=1e15)
    p.add_argument("--sweep", required=True, help="U_START,U_STOP,POINTS in units of omega0")
    p.add_argument("--scale", choices=("linear", "log"), default="linear")

    p = add("unruh", _cmd_unruh, "Unruh-Davies temperature in K")
    p.add_argument("--accel", type=float, required=True)

    p = add("trajectory", _cmd_trajectory, "reduced-order time-domain run", fmt="csv")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--drive", required=True, help="E0,OMEGA,PHASE")
    p.add_argument("--duration", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)

    p = add("worldline", _cmd_worldline, "hyperbolic worldline and LAD cancellation", fmt="csv")
    p.add_argument("--accel", type=float, required=True)
    p.add_argument("--tau-range", type=float, required=True,
                   help="sample rapidities a tau / c in [-R, R]")
    p.add_argument("--points", type=_positive_int, default=101)

    p = add("thermofield", _cmd_thermofield, "thermofield expectations")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--nmax", type=int, default=40)

    p = sub.add_parser("sweep", help="run a subcommand over a parameter range", allow_abbrev=False)
    p.add_argument("target", choices=("commutator", "uncertainty", "spectrum",
                                      "trajectory", "thermofield"))
    p.add_argument("--var", required=True, choices=sorted(SWEEP_VARIABLES))
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--out", default=None)
    p.set_defaults(func=None)
    return parser


def _emit(text, out, stdout):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _run_sweep(parser, args, rest, stdout):
    cfg = SweepConfig(args.var, args.start, args.stop, args.points, args.scale)
    targets, flag = SWEEP_VARIABLES[cfg.variable]
    if args.target not in targets:
        raise _UsageError(f"--var {cfg.variable} does not apply to {args.target}")
    rows = []
    for value in sweep_values(cfg):
        argv = [args.target, *rest]
        if cfg.variable == "omega_drive":
            argv = _replace_drive_omega(argv, value)
        else:
            argv += [flag, _fmt(value)]
        sub_args = parser.parse_args(argv)
        record, _ = sub_args.func(sub_args)
        rows.append({cfg.variable: value, **{k: v for k, v in record.items()
                                             if k != cfg.variable}})
    _emit(_csv(rows), args.out, stdout)


def _replace_drive_omega(argv, omega):
    if "--drive" not in argv:
        raise _UsageError("sweep over omega_drive needs --drive E0,OMEGA,PHASE")
    i = argv.index("--drive")
    e0, _, phi = _float_list(argv[i + 1], 3, "--drive")
    return argv[:i + 1] + [f"{_fmt(e0)},{_fmt(omega)},{_fmt(phi)}"] + argv[i + 2:]


def run(argv, stdout=None, stderr=None) -> int:
    """Execute one CLI invocation and return its exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args, rest = parser.parse_known_args(argv)
        if args.command == "sweep":
            _run_sweep(parser, args, rest, stdout)
            return 0
        if rest:
            raise _UsageError(f"unrecognized arguments: {' '.join(rest)}")
        record, table = args.func(args)
        fmt = args.format or args.default_format
        if isinstance(table, list):
            table = _csv(table) if fmt == "csv" else "\n".join(_json(r) for r in table) + "\n"
        if table is None:
            text = _json(record) + "\n" if fmt == "json" else _csv([record])
            _emit(text, args.out, stdout)
        elif args.out:
            _emit(table, args.out, stdout)
            stdout.write(_json(record) + "\n")
        else:
            # Table on stdout keeps it a clean CSV; the summary goes to stderr.
            stdout.write(table)
            stderr.write(_json(record) + "\n")
        return 0
    except _UsageError as exc:
        stderr.write(f"radreact: error: {exc}\n")
        return 2
    except (DomainError, PreconditionError, TruncationError) as exc:
        stderr.write(f"radreact: error: {str(exc).splitlines()[0]}\n")
        return 2
    except NonConvergenceError as exc:
        stderr.write(f"radreact: not converged: {exc}\n")
        return 3


def main():
    sys.exit(run(sys.argv[1:]))
