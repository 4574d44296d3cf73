"""``qbouncer`` command line: spectra, wavefunction samples, scaling fits and self-checks.

Exit codes: 0 success, 1 a verification check failed, 2 bad arguments,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import checks
from .airy import DEFAULT_CONFIG, airy_arrays
from .bouncer import (
    CESIUM_MASS,
    G_STANDARD,
    HBAR,
    QUAD_TOL,
    BouncerSystem,
    eigenstate,
    energy_asymptotic,
    eval_wavefunction,
    make_system,
    natural_system,
)
from .errors import BouncerError, DomainError
from .spectrum import DEFAULT_TOL, build_spectrum, fit_scaling_exponent

SCHEMA_VERSION = "1.0"
CONFIG_KEYS = ("mass", "g", "hbar")


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    params: dict
    columns: list[str]
    rows: list[list]
    route_stats: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        obj = {
            "schema_version": self.schema_version,
            "command": self.command,
            "params": self.params,
            "rows": [dict(zip(self.columns, r)) for r in self.rows],
            "provenance": {
                "evaluator_route_stats": self.route_stats,
                "tolerances": {
                    "root_tol": DEFAULT_TOL,
                    "series_abs_tol": DEFAULT_CONFIG.abs_tol,
                    "series_max_terms": DEFAULT_CONFIG.max_terms,
                    "quad_tol": QUAD_TOL,
                },
            },
        }
        return json.dumps(obj, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([v if isinstance(v, (int, str)) else "%.17g" % v for v in r])
        return buf.getvalue()


def read_config(path: str | None) -> dict[str, float]:
    """Physical constants from ``key = value`` lines; missing keys keep the defaults."""
    values = {"mass": CESIUM_MASS, "g": G_STANDARD, "hbar": HBAR}
    if path is None:
        return values
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",))
    try:
        parser.read_string("[constants]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}: {exc}") from exc
    for key, raw in parser["constants"].items():
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} in {path} (allowed: {', '.join(CONFIG_KEYS)})")
        try:
            values[key] = float(raw)
        except ValueError as exc:
            raise UsageError(f"config key {key} is not a number: {raw!r}") from exc
    return values


def _system(args) -> BouncerSystem:
    if args.units == "natural":
        return natural_system()
    c = read_config(args.config)
    return make_system(c["mass"], c["g"], c["hbar"])


def _system_params(args, system: BouncerSystem) -> dict:
    return {"units": args.units, "mass": system.mass, "g": system.g, "hbar": system.hbar,
            "z0": system.z0, "e_scale": system.e_scale}


def _route_stats(xi) -> dict[str, int]:
    routes = airy_arrays(np.asarray(xi, dtype=float)).route
    counts = Counter(r[1].value if isinstance(r, tuple) else r.value for r in routes)
    return dict(sorted(counts.items()))


def cmd_spectrum(args) -> OutputRecord:
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    system = _system(args)
    spec = build_spectrum(args.n_max)
    rows = [[e.n, e.lambda_exact, e.lambda_asym, e.rel_error,
             system.e_scale * e.lambda_exact, energy_asymptotic(system, e.n)] for e in spec]
    params = {"n_max": args.n_max, **_system_params(args, system)}
    return OutputRecord("spectrum", params,
                        ["n", "lambda_exact", "lambda_asym", "rel_error", "E_exact", "E_asym"],
                        rows, _route_stats(-spec.exact))


def cmd_wavefunction(args) -> OutputRecord:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if not (math.isfinite(args.z_max_factor) and args.z_max_factor > 0):
        raise UsageError("--z-max-factor must be positive")
    system = _system(args)
    state = eigenstate(system, args.n)
    z = np.linspace(0.0, args.z_max_factor * state.turning_point, args.points)
    phi = eval_wavefunction(state, system, z)
    params = {"n": args.n, "points": args.points, "z_max_factor": args.z_max_factor,
              "lambda": state.lam, "energy": state.energy,
              "turning_point": state.turning_point, "norm_const": state.norm_const,
              **_system_params(args, system)}
    return OutputRecord("wavefunction", params, ["z", "phi"],
                        [[float(a), float(b)] for a, b in zip(z, phi)],
                        _route_stats(z / system.z0 - state.lam))


def cmd_scaling(args) -> OutputRecord:
    if not (1 <= args.n_lo < args.n_hi) or args.n_hi - args.n_lo < 10:
        raise UsageError("need 1 <= n_lo < n_hi with n_hi - n_lo >= 10")
    spec = build_spectrum(args.n_hi)
    p = fit_scaling_exponent(spec, args.n_lo, args.n_hi)
    ns = np.arange(args.n_lo, args.n_hi + 1)
    lam = spec.exact[args.n_lo - 1:]
    rows = [[int(n), math.log(n), float(v), math.log(v)] for n, v in zip(ns, lam)]
    return OutputRecord("scaling", {"n_lo": args.n_lo, "n_hi": args.n_hi, "exponent": p},
                        ["n", "log_n", "lambda_exact", "log_lambda"], rows, _route_stats(-lam))


def cmd_verify(args, out) -> int:
    results = checks.run(args.level)
    for c in results:
        print(c.line(), file=out)
    failed = [c for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS,
                        help="key = value file with mass, g, hbar (SI units)")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json"), default="csv")

    p = argparse.ArgumentParser(prog="qbouncer", parents=[common],
                                description="Quantum bouncer levels and states from Airy functions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common, fmt], help="exact and closed-form levels")
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--units", choices=("natural", "si"), default="natural")

    w = sub.add_parser("wavefunction", parents=[common, fmt], help="sampled eigenfunction")
    w.add_argument("--n", type=int, default=1)
    w.add_argument("--points", type=int, default=1001)
    w.add_argument("--z-max-factor", type=float, default=2.0,
                   help="sample z in [0, factor * turning point]")
    w.add_argument("--units", choices=("natural", "si"), default="natural")

    c = sub.add_parser("scaling", parents=[common, fmt], help="log-log fit of the levels")
    c.add_argument("--n-lo", type=int, default=10)
    c.add_argument("--n-hi", type=int, default=200)

    v = sub.add_parser("verify", parents=[common], help="run the self-checks")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    return p


COMMANDS = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction, "scaling": cmd_scaling}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "config"):
        args.config = None
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        record = COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"qbouncer {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (BouncerError, ArithmeticError) as exc:
        level = f" at level {exc.n}" if getattr(exc, "n", None) is not None else ""
        print(f"qbouncer {args.command}: numerical failure ({type(exc).__name__}{level}): {exc}",
              file=sys.stderr)
        return 3
    out.write(record.to_json() if args.format == "json" else record.to_csv())
    return 0


if __name__ == "__main__":
    sys.exit(main())
