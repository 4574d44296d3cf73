"""Physical units for the bouncer: length and energy scales, eigenstates.

Inside this module every integral is done in the dimensionless height
``x = z / z0``, where level ``n`` is ``Ai(x - lambda_n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .airy import DEFAULT_CONFIG, SeriesConfig, airy, ai
from .errors import DomainError, QuadratureFailure
from .quadrature import integrate
from .spectrum import DEFAULT_TOL, _check_level, lambda_exact

HBAR = 1.054571817e-34  # J s, CODATA 2018
G_STANDARD = 9.80665  # m s^-2
CESIUM_MASS = 2.206946951e-25  # kg, 132.905451961 u

# Ai(x)^2 at x = 12 is ~1e-22, far below the quadrature tolerance
TAIL = 12.0
QUAD_TOL = 1e-10
NORM_CHECK = 1e-8


@dataclass(frozen=True)
class BouncerSystem:
    """Mass (kg), gravity (m/s^2), hbar (J s) and the derived scales."""

    mass: float
    g: float
    hbar: float
    z0: float
    e_scale: float


def make_system(mass: float = CESIUM_MASS, g: float = G_STANDARD, hbar: float = HBAR) -> BouncerSystem:
    """Build a system; ``z0 = (hbar^2 / (2 m^2 g))^(1/3)`` and ``e_scale = m g z0``."""
    for name, v in (("mass", mass), ("g", g), ("hbar", hbar)):
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive and finite, got {v!r}")
    z0 = (hbar * hbar / (2.0 * mass * mass * g)) ** (1.0 / 3.0)
    return BouncerSystem(mass, g, hbar, z0, mass * g * z0)


def natural_system() -> BouncerSystem:
    """Units with ``z0 = 1`` and ``e_scale = 1`` (m = 1/2, g = 2, hbar = 1)."""
    return make_system(0.5, 2.0, 1.0)


def energy_exact(system: BouncerSystem, n: int, tol: float = DEFAULT_TOL) -> float:
    return system.e_scale * lambda_exact(n, tol)


def energy_asymptotic(system: BouncerSystem, n: int) -> float:
    """Closed form ``[9/8 pi^2 (n - 1/4)^2 m hbar^2 g^2]^(1/3)``."""
    n = _check_level(n)
    m, g, hbar = system.mass, system.g, system.hbar
    return (9.0 / 8.0 * math.pi**2 * (n - 0.25) ** 2 * m * hbar**2 * g**2) ** (1.0 / 3.0)


@dataclass(frozen=True)
class Eigenstate:
    n: int
    lam: float
    energy: float
    turning_point: float
    norm_const: float

    @property
    def x_cut(self) -> float:
        """Dimensionless height past which the state is negligible."""
        return self.lam + TAIL


def _airy_integral(f, upper: float, breakpoints=()) -> float:
    val, _ = integrate(f, 0.0, upper, abs_tol=QUAD_TOL, breakpoints=breakpoints)
    return val


def eigenstate(system: BouncerSystem, n: int, tol: float = DEFAULT_TOL,
               cfg: SeriesConfig = DEFAULT_CONFIG) -> Eigenstate:
    """Level ``n`` with ``phi_n(z) = C_n Ai(z/z0 - lambda_n)``, ``C_n > 0``.

    ``C_n`` comes from quadrature and must agree with the closed form
    ``1 / (sqrt(z0) |Ai'(-lambda_n)|)`` to 1e-8 relative.
    """
    n = _check_level(n)
    lam = lambda_exact(n, tol, cfg)
    norm2 = _airy_integral(lambda x: ai(x - lam, cfg) ** 2, lam + TAIL, breakpoints=[lam])
    c_quad = 1.0 / math.sqrt(system.z0 * norm2)
    c_closed = 1.0 / (math.sqrt(system.z0) * abs(airy(-lam, cfg)[0].derivative))
    if abs(c_quad / c_closed - 1.0) > NORM_CHECK:
        err = QuadratureFailure(
            f"normalization of level {n}: quadrature {c_quad!r} vs closed form {c_closed!r}"
        )
        err.n = n
        raise err
    return Eigenstate(n, lam, system.e_scale * lam, system.z0 * lam, c_quad)


def eval_wavefunction(state: Eigenstate, system: BouncerSystem, z, cfg: SeriesConfig = DEFAULT_CONFIG):
    """``phi_n(z)`` in m^-1/2; zero on and below the floor."""
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.zeros_like(z_arr)
    above = z_arr > 0
    if above.any():
        out[above] = state.norm_const * ai(z_arr[above] / system.z0 - state.lam, cfg)
    return float(out[0]) if np.ndim(z) == 0 else out


def expectation_z(state: Eigenstate, system: BouncerSystem, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Mean height ``<z>`` in metres."""
    lam = state.lam
    moment = _airy_integral(lambda x: x * ai(x - lam, cfg) ** 2, state.x_cut, breakpoints=[lam])
    return state.norm_const**2 * system.z0**2 * moment


def expectation_potential(state: Eigenstate, system: BouncerSystem) -> float:
    """``<V> = m g <z>`` in joules."""
    return system.mass * system.g * expectation_z(state, system)


def overlap(a: Eigenstate, b: Eigenstate, system: BouncerSystem, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """``integral phi_a phi_b dz`` (dimensionless)."""
    upper = max(a.x_cut, b.x_cut)
    val = _airy_integral(lambda x: ai(x - a.lam, cfg) * ai(x - b.lam, cfg), upper,
                         breakpoints=sorted({a.lam, b.lam}))
    return a.norm_const * b.norm_const * system.z0 * val


def count_nodes(state: Eigenstate, system: BouncerSystem, points: int = 20001) -> int:
    """Sign changes of ``phi_n`` on a uniform grid over ``(0, z0 * x_cut]``."""
    z = np.linspace(0.0, state.x_cut * system.z0, points)[1:]
    s = np.sign(eval_wavefunction(state, system, z))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def classical_turning_point(system: BouncerSystem, n: int) -> float:
    """Height ``z0 * lambda_n`` (m) where a classical particle of energy E_n turns."""
    return system.z0 * lambda_exact(n)
