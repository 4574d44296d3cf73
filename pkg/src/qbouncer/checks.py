"""Self-checks run by ``qbouncer verify``; each returns a measured value and its bound."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .airy import (
    CONSTANTS,
    SWITCHOVER,
    airy_arrays,
    asymptotic_neg_arrays,
    asymptotic_pos_arrays,
    bessel_arrays,
    series_arrays,
)
from .bouncer import count_nodes, eigenstate, expectation_z, natural_system, overlap
from .oracle_fd import convergence_study, richardson, solve_fd
from .spectrum import Spectrum, build_spectrum, fit_scaling_exponent


class Check(NamedTuple):
    name: str
    metric: str
    value: float
    bound: float
    passed: bool

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {self.metric}={self.value:.6g} {verdict}(<{self.bound:g})"


def _check(name: str, metric: str, value: float, bound: float) -> Check:
    value = float(value)
    return Check(name, metric, value, bound, bool(value < bound))


PROBES = np.array([-8.0, -5.0, -2.0, -1.0, 0.0, 1.0, 2.0, 5.0, 8.0])
_H = 1e-4


def _ode_residual(fn: Callable, xs: np.ndarray) -> float:
    worst = 0.0
    for field in ("ai", "bi"):
        lo, mid, hi = (getattr(fn(xs + d), field) for d in (-_H, 0.0, _H))
        d2 = (hi - 2 * mid + lo) / _H**2
        worst = max(worst, float(np.max(np.abs(d2 - xs * mid) / np.maximum(1.0, np.abs(mid)))))
    return worst


def ode_residual() -> Check:
    """Central-difference residual of ``y'' = x y`` for every route on its own probe points."""
    routes = [
        (series_arrays, PROBES),
        (bessel_arrays, PROBES[PROBES > 0]),
        (asymptotic_pos_arrays, PROBES[PROBES >= SWITCHOVER]),
        (lambda v: asymptotic_neg_arrays(-v), PROBES[PROBES <= -SWITCHOVER]),
        (airy_arrays, PROBES),
    ]
    return _check("ode residual", "max_residual", max(_ode_residual(f, xs) for f, xs in routes), 1e-6)


def constants_at_zero() -> Check:
    r = series_arrays(0.0)
    dev = max(abs(r.ai[0] - CONSTANTS.c1), abs(r.aip[0] + CONSTANTS.c2))
    return _check("stored constants", "max_abs_dev", dev, 1e-15)


def wronskian() -> Check:
    r = airy_arrays(np.linspace(-SWITCHOVER, SWITCHOVER, 481))
    w = r.ai * r.bip - r.aip * r.bi
    return _check("wronskian", "max_abs_dev", np.max(np.abs(w - 1 / math.pi)), 1e-10)


def series_bessel_agreement() -> Check:
    xs = np.linspace(0.0, SWITCHOVER, 601)[1:]
    s, b = series_arrays(xs), bessel_arrays(xs)
    return _check("series vs bessel", "max_abs_diff",
                  max(np.max(np.abs(s.ai - b.ai)), np.max(np.abs(s.bi - b.bi))), 1e-11)


def switchover_continuity() -> Check:
    t = np.array([SWITCHOVER])
    jump = max(abs(series_arrays(t).ai[0] - asymptotic_pos_arrays(t).ai[0]),
               abs(series_arrays(-t).ai[0] - asymptotic_neg_arrays(t).ai[0]))
    return _check("switchover continuity", "max_jump", jump, 1e-10)


def one_percent_claim(spec: Spectrum) -> Check:
    errs = spec.rel_errors[:100]
    c = _check("closed-form levels", "max_rel_error", errs.max(), 0.01)
    at = int(np.argmax(errs)) + 1
    return c._replace(metric=f"n_at_max={at} max_rel_error", passed=c.passed and at == 1)


def scaling_exponent(spec: Spectrum) -> Check:
    p = fit_scaling_exponent(spec, 10, 200)
    return _check("scaling fit", "exponent_dev_from_2/3", abs(p - 2 / 3), 0.01)._replace(
        metric=f"exponent={p:.6f} dev")


def square_well_exponent() -> Check:
    ns = np.arange(1, 31)
    p = fit_scaling_exponent(Spectrum.from_values(ns.astype(float) ** 2), 1, 30)
    return _check("square-well fit", "exponent_dev_from_2", abs(p - 2), 0.001)._replace(
        metric=f"exponent={p:.6f} dev")


def fd_oracle_agreement(spec: Spectrum) -> Check:
    a, b = solve_fd(10, 2000, 20.0), solve_fd(10, 4000, 20.0)
    r = richardson(a.eigenvalues, b.eigenvalues)
    return _check("fd oracle levels 1-10", "max_abs_diff", np.max(np.abs(r - spec.exact[:10])), 1e-6)


def fd_convergence_order() -> Check:
    p = convergence_study(1, [500, 1000, 2000]).order
    return _check("fd oracle order", "p_dev_from_2", abs(p - 2), 0.2)._replace(metric=f"p={p:.4f} dev")


def eigenstate_suite(n_max: int = 10) -> list[Check]:
    nat = natural_system()
    states = [eigenstate(nat, n) for n in range(1, n_max + 1)]
    ortho = max(abs(overlap(a, b, nat) - (a.n == b.n)) for a in states for b in states if b.n >= a.n)
    nodes = max(abs(count_nodes(s, nat) - (s.n - 1)) for s in states)
    mean = max(abs(expectation_z(s, nat) / (2 / 3 * s.turning_point) - 1) for s in states)
    return [
        _check("orthonormality", "max_abs_dev", ortho, 1e-7),
        _check("node count", "max_mismatch", nodes, 0.5),
        _check("mean height", "max_rel_dev", mean, 1e-6),
    ]


def run(level: str = "quick") -> list[Check]:
    """All checks; ``full`` adds the FD convergence study and the eigenstate suite."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    spec = build_spectrum(200)
    checks = [
        constants_at_zero(),
        ode_residual(),
        wronskian(),
        series_bessel_agreement(),
        switchover_continuity(),
        one_percent_claim(spec),
        scaling_exponent(spec),
        square_well_exponent(),
        fd_oracle_agreement(spec),
    ]
    if level == "full":
        checks.append(fd_convergence_order())
        checks.extend(eigenstate_suite())
    return checks
