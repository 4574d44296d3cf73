"""Airy functions Ai, Bi and their derivatives on the real line.

Three independent evaluation routes are provided:

* ``airy_series``: the Maclaurin expansion ``Ai = c1 f - c2 g``,
  ``Bi = sqrt(3) (c1 f + c2 g)``, summed in double-double arithmetic.
* ``airy_bessel``: the modified Bessel representation through
  ``I_{+-1/3}`` and ``I_{+-2/3}`` (positive axis only), also double-double.
* ``airy_asymptotic_pos`` / ``airy_asymptotic_neg``: the large-argument
  expansions, optimally truncated by default.

``airy`` dispatches between them at ``|xi| = SWITCHOVER``. Every function has a
vectorized twin (``*_arrays``) used by the quadrature and root-finding code.

Double-double is needed because for xi > 0 the series value is a difference
of two numbers of size ~Bi(xi), so plain doubles leave absolute noise of order
``1e-16 * Bi(xi)``, which breaks the Wronskian and finite-difference checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _dd as dd
from .errors import DomainError, NonConvergence
from .gamma import gamma

SWITCHOVER = 6.0
# asymptotic routes accept the whole overlap band [T - 1, T + 1]
ASYMPTOTIC_MIN = SWITCHOVER - 1.0

_EPS = np.finfo(float).eps
_SQRT3 = (1.7320508075688772, 1.0035084221806903e-16)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
# the constants are quoted to 15 decimals
_CONST_ROUNDING = 5e-16

# Sign of the cosine sum in the oscillatory expansion of Ai(-x). Printed as +
# in the source derivation; the quadrature oracle and the series route both
# require -, which is also the sign in standard references.
_NEG_COS_SIGN = -1.0


class Route(enum.Enum):
    SERIES = "series"
    BESSEL = "bessel"
    ASYMPTOTIC_POS = "asymptotic_pos"
    ASYMPTOTIC_NEG = "asymptotic_neg"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class AiryValue:
    """Value/derivative pair for Ai or Bi at one point.

    ``via`` records the underlying route when ``route`` is ``Route.HYBRID``.
    """

    value: float
    derivative: float
    route: Route
    est_error: float
    via: Route | None = None

    def __post_init__(self):
        if not (math.isfinite(self.est_error) and self.est_error >= 0.0):
            raise ValueError(f"est_error must be finite and >= 0, got {self.est_error}")


@dataclass(frozen=True)
class OptimalTruncation:
    """Stop before the first term that grows, or once a term is below abs_tol."""


@dataclass(frozen=True)
class FixedK:
    """Keep exactly ``k`` terms of an asymptotic series."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"FixedK needs a positive integer, got {self.k}")


@dataclass(frozen=True)
class SeriesConfig:
    abs_tol: float = 1e-17
    max_terms: int = 200
    asym_truncation: OptimalTruncation | FixedK = field(default_factory=OptimalTruncation)

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms}")


@dataclass(frozen=True)
class AiryConstants:
    c1: float = 0.355028053887817  # Ai(0)
    c2: float = 0.258819403792807  # -Ai'(0)


DEFAULT_CONFIG = SeriesConfig()
CONSTANTS = AiryConstants()


class AiryArrays(NamedTuple):
    """Vectorized evaluation result; ``route`` holds ``Route`` members."""

    ai: np.ndarray
    aip: np.ndarray
    bi: np.ndarray
    bip: np.ndarray
    ai_err: np.ndarray
    bi_err: np.ndarray
    route: np.ndarray


def _as_array(xi) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(xi, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise DomainError("Airy argument must be finite")
    return arr


# ---------------------------------------------------------------------------
# power series


def _maclaurin(xi: np.ndarray, m: int, cfg: SeriesConfig):
    """Sum ``sum_k a_k xi^(3k+m) / (3k+m)!`` and its derivative in dd.

    ``a_k = (m+1)(m+4)...(m+3k-2)`` is the product ``3^k (m/3 + 1/3)_k``,
    built one factor per step. ``m=0`` gives f, ``m=1`` gives g.
    Returns ``(value_dd, deriv_dd, tail)`` with ``tail`` the last term size.
    """
    xi2 = dd.two_prod(xi, xi)
    xi3 = dd.mul_d(xi2, xi)
    if m == 0:
        t = dd.from_float(np.ones_like(xi))
        u = dd.from_float(np.zeros_like(xi))
    else:
        t = dd.from_float(xi.copy())
        u = dd.from_float(np.ones_like(xi))
    s, ds = t, u
    tail = np.zeros_like(xi)
    for k in range(1, cfg.max_terms):
        p = 3 * k + m
        poch = float(p - 2)
        t = dd.div_d(dd.mul_d(dd.mul(t, xi3), poch), float(p * (p - 1) * (p - 2)))
        if m == 0 and k == 1:
            u = dd.div_d(xi2, 2.0)
        else:
            u = dd.div_d(dd.mul_d(dd.mul(u, xi3), poch), float((p - 1) * (p - 2) * (p - 3)))
        s = dd.add(s, t)
        ds = dd.add(ds, u)
        tail = np.maximum(np.abs(t[0]), np.abs(u[0]))
        if np.all(tail < cfg.abs_tol):
            return s, ds, tail
    raise NonConvergence(
        f"power series not converged after {cfg.max_terms} terms "
        f"(|xi| up to {np.max(np.abs(xi)):.3g})"
    )


def series_coefficients(m: int, n_terms: int) -> list[tuple[int, Fraction]]:
    """Exact ``(power, coefficient)`` pairs of f (``m=0``) or g (``m=1``)."""
    out = []
    poch = 1
    for k in range(n_terms):
        if k:
            poch *= 3 * k + m - 2
        out.append((3 * k + m, Fraction(poch, math.factorial(3 * k + m))))
    return out


def series_f(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Even-type series ``f(xi) = sum 3^k (1/3)_k xi^(3k) / (3k)!``."""
    s, _, _ = _maclaurin(_as_array(xi), 0, cfg)
    return float(dd.to_float(s)[0])


def series_g(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Odd-type series ``g(xi) = sum 3^k (2/3)_k xi^(3k+1) / (3k+1)!``."""
    s, _, _ = _maclaurin(_as_array(xi), 1, cfg)
    return float(dd.to_float(s)[0])


def series_fg_derivatives(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Return ``(f'(xi), g'(xi))`` from the term-wise differentiated series."""
    arr = _as_array(xi)
    _, df, _ = _maclaurin(arr, 0, cfg)
    _, dg, _ = _maclaurin(arr, 1, cfg)
    return float(dd.to_float(df)[0]), float(dd.to_float(dg)[0])


def series_arrays(xi, cfg: SeriesConfig = DEFAULT_CONFIG,
                  constants: AiryConstants = CONSTANTS) -> AiryArrays:
    xi = _as_array(xi)
    f, df, tf = _maclaurin(xi, 0, cfg)
    g, dg, tg = _maclaurin(xi, 1, cfg)
    c1, c2 = constants.c1, constants.c2

    a_f, a_g = dd.mul_d(f, c1), dd.mul_d(g, c2)
    ai = dd.to_float(dd.sub(a_f, a_g))
    bi = dd.to_float(dd.mul(dd.add(a_f, a_g), _SQRT3))
    aip = dd.to_float(dd.sub(dd.mul_d(df, c1), dd.mul_d(dg, c2)))
    bip = dd.to_float(dd.mul(dd.add(dd.mul_d(df, c1), dd.mul_d(dg, c2)), _SQRT3))

    size = np.abs(f[0]) + np.abs(g[0])
    trunc = c1 * tf + c2 * tg
    ai_err = trunc + _CONST_ROUNDING * size + 2 * _EPS * np.abs(ai)
    bi_err = math.sqrt(3.0) * (trunc + _CONST_ROUNDING * size) + 2 * _EPS * np.abs(bi)
    route = np.full(xi.shape, Route.SERIES, dtype=object)
    return AiryArrays(ai, aip, bi, bip, ai_err, bi_err, route)


def _pair(arrs: AiryArrays, i: int = 0) -> tuple[AiryValue, AiryValue]:
    route = arrs.route[i]
    via = None
    if isinstance(route, tuple):
        route, via = route
    ai = AiryValue(float(arrs.ai[i]), float(arrs.aip[i]), route, float(arrs.ai_err[i]), via)
    bi = AiryValue(float(arrs.bi[i]), float(arrs.bip[i]), route, float(arrs.bi_err[i]), via)
    return ai, bi


def airy_series(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[AiryValue, AiryValue]:
    """Ai and Bi from the power series; raises NonConvergence for huge ``|xi|``."""
    return _pair(series_arrays(xi, cfg))


# ---------------------------------------------------------------------------
# modified Bessel route


def bessel_i_dd(x, p: Fraction, cfg: SeriesConfig = DEFAULT_CONFIG):
    """``I_p(x)`` for dd ``x > 0`` and rational ``p`` by its ascending series.

    ``(s+p)!`` is read as ``Gamma(s+p+1)``; only ``Gamma(p+1)`` is evaluated,
    later factors come from ``Gamma(z+1) = z Gamma(z)``.
    """
    p = Fraction(p)
    num, den = p.numerator, p.denominator
    half = (x[0] * 0.5, x[1] * 0.5)
    q = dd.mul(half, half)
    t = dd.from_float(np.full_like(x[0], 1.0 / gamma(float(p) + 1.0)))
    s = t
    for k in range(1, cfg.max_terms):
        # (k + p) = (k*den + num) / den
        t = dd.div_d(dd.mul_d(dd.mul(t, q), float(den)), float(k * (k * den + num)))
        s = dd.add(s, t)
        if np.all(np.abs(t[0]) < cfg.abs_tol * np.maximum(1.0, np.abs(s[0]))):
            break
    else:
        raise NonConvergence(f"Bessel I_{p} series not converged after {cfg.max_terms} terms")

    pre = dd.root(half, den) if den > 1 else half
    base = pre
    for _ in range(abs(num) - 1):
        pre = dd.mul(pre, base)
    if num < 0:
        pre = dd.recip(pre)
    elif num == 0:
        pre = dd.from_float(np.ones_like(x[0]))
    return dd.mul(pre, s)


def bessel_i(x: float, p, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Scalar ``I_p(x)`` for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"bessel_i needs x > 0, got {x}")
    return float(dd.to_float(bessel_i_dd(dd.from_float(_as_array(x)), Fraction(p), cfg))[0])


def bessel_arrays(xi, cfg: SeriesConfig = DEFAULT_CONFIG) -> AiryArrays:
    xi = _as_array(xi)
    if np.any(xi <= 0):
        raise DomainError("Bessel route is defined for xi > 0 only")
    sq = dd.root(dd.from_float(xi), 2)
    zeta = dd.div_d(dd.mul_d(dd.mul_d(sq, xi), 2.0), 3.0)
    im13 = bessel_i_dd(zeta, Fraction(-1, 3), cfg)
    ip13 = bessel_i_dd(zeta, Fraction(1, 3), cfg)
    im23 = bessel_i_dd(zeta, Fraction(-2, 3), cfg)
    ip23 = bessel_i_dd(zeta, Fraction(2, 3), cfg)

    # Ai = (1/3) sqrt(xi) [I_-1/3 - I_1/3],  Bi = sqrt(xi/3) [I_-1/3 + I_1/3]
    ai = dd.to_float(dd.div_d(dd.mul(sq, dd.sub(im13, ip13)), 3.0))
    bi = dd.to_float(dd.div(dd.mul(sq, dd.add(im13, ip13)), _SQRT3))
    # Ai' = (xi/3) [I_2/3 - I_-2/3],  Bi' = (xi/sqrt 3) [I_-2/3 + I_2/3]
    aip = dd.to_float(dd.div_d(dd.mul_d(dd.sub(ip23, im23), xi), 3.0))
    bip = dd.to_float(dd.div(dd.mul_d(dd.add(im23, ip23), xi), _SQRT3))

    # 1/Gamma(p+1) carries the Lanczos error (~1e-15 relative) into each I_p
    size = np.sqrt(xi) * (np.abs(im13[0]) + np.abs(ip13[0]))
    ai_err = 2e-15 * size / 3.0 + 2 * _EPS * np.abs(ai)
    bi_err = 2e-15 * size / math.sqrt(3.0) + 2 * _EPS * np.abs(bi)
    route = np.full(xi.shape, Route.BESSEL, dtype=object)
    return AiryArrays(ai, aip, bi, bip, ai_err, bi_err, route)


def airy_bessel(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[AiryValue, AiryValue]:
    """Ai and Bi through modified Bessel functions of order +-1/3; ``xi > 0``."""
    if not xi > 0:
        raise DomainError(f"Bessel route needs xi > 0, got {xi}")
    return _pair(bessel_arrays(xi, cfg))


# ---------------------------------------------------------------------------
# asymptotic expansions


def asymptotic_coefficient(k: int) -> float:
    """``c_k = Gamma(3k + 1/2) / (54^k k! Gamma(k + 1/2))`` evaluated directly."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return gamma(3 * k + 0.5) / (54.0**k * math.factorial(k) * gamma(k + 0.5))


def _coefficients(n: int) -> np.ndarray:
    # ratio c_k / c_{k-1} = (6k-5)(6k-3)(6k-1) / (216 k (2k-1)); avoids the
    # overflow of Gamma(3k + 1/2) past k ~ 56
    c = np.empty(n)
    c[0] = 1.0
    for k in range(1, n):
        c[k] = c[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
    return c


_C = _coefficients(190)  # c_k overflows a double past k ~ 195


def _truncation(zeta: np.ndarray, cfg: SeriesConfig):
    """Terms ``c_j zeta^-j`` (shape (J, N)) and per-point kept-term count K.

    With optimal truncation K is the index of the first term that is larger
    than its predecessor or below ``abs_tol``; ``terms[K]`` is then the first
    omitted term.
    """
    trunc = cfg.asym_truncation
    if isinstance(trunc, FixedK):
        j = np.arange(trunc.k + 1)[:, None]
        terms = _C[: trunc.k + 1, None] * zeta[None, :] ** (-j.astype(float))
        return terms, np.full(zeta.shape, trunc.k, dtype=int)

    jmax = min(len(_C) - 1, cfg.max_terms)
    j = np.arange(jmax + 1)[:, None].astype(float)
    with np.errstate(under="ignore"):
        terms = _C[: jmax + 1, None] * np.exp(-j * np.log(zeta)[None, :])
    grows = np.zeros(terms.shape, dtype=bool)
    grows[1:] = terms[1:] > terms[:-1]
    stop = grows | (terms < cfg.abs_tol)
    stop[0] = False
    if not np.all(stop.any(axis=0)):
        raise NonConvergence("asymptotic series did not reach its smallest term")
    K = np.argmax(stop, axis=0)
    return terms, K


def asymptotic_pos_arrays(xi, cfg: SeriesConfig = DEFAULT_CONFIG,
                          min_arg: float = ASYMPTOTIC_MIN) -> AiryArrays:
    xi = _as_array(xi)
    if np.any(xi < min_arg):
        raise DomainError(f"positive asymptotic route needs xi >= {min_arg}")
    zeta = 2.0 / 3.0 * xi**1.5
    terms, K = _truncation(zeta, cfg)
    j = np.arange(terms.shape[0])[:, None]
    keep = j < K[None, :]
    kept = np.where(keep, terms, 0.0)
    alt = np.where(j % 2 == 0, 1.0, -1.0)
    # d/dxi of xi^-1/4 e^(-+zeta) zeta^-k = xi^1/4 e^(-+zeta) [-+zeta^-k - (k+1/6) zeta^(-k-1)]
    dfac = (j + 1.0 / 6.0) / zeta[None, :]

    s_ai = np.sum(alt * kept, axis=0)
    s_bi = np.sum(kept, axis=0)
    d_ai = np.sum(alt * kept * (-1.0 - dfac), axis=0)
    d_bi = np.sum(kept * (1.0 - dfac), axis=0)
    omitted = terms[K, np.arange(xi.size)]

    q = xi**0.25
    with np.errstate(over="ignore"):
        decay = 0.5 * _INV_SQRT_PI * np.exp(-zeta)
        grow = _INV_SQRT_PI * np.exp(zeta)
    ai = decay / q * s_ai
    aip = decay * q * d_ai
    bi = grow / q * s_bi
    bip = grow * q * d_bi
    ai_err = decay / q * omitted + 4 * _EPS * np.abs(ai)
    # the Bi series does not alternate, so its first omitted term is not a bound
    bi_err = 2.0 * grow / q * omitted + 4 * _EPS * np.abs(bi)
    route = np.full(xi.shape, Route.ASYMPTOTIC_POS, dtype=object)
    return AiryArrays(ai, aip, bi, bip, ai_err, bi_err, route)


def airy_asymptotic_pos(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG,
                        min_arg: float = ASYMPTOTIC_MIN) -> tuple[AiryValue, AiryValue]:
    """Large positive argument. Bi carries the growing exponential."""
    return _pair(asymptotic_pos_arrays(xi, cfg, min_arg))


def asymptotic_neg_arrays(x, cfg: SeriesConfig = DEFAULT_CONFIG,
                          min_arg: float = ASYMPTOTIC_MIN,
                          cos_sign: float = _NEG_COS_SIGN) -> AiryArrays:
    """Ai(-x), Bi(-x) and their derivatives with respect to ``xi = -x``."""
    x = _as_array(x)
    if np.any(x < min_arg):
        raise DomainError(f"oscillatory asymptotic route needs x >= {min_arg}")
    zeta = 2.0 / 3.0 * x**1.5
    terms, K = _truncation(zeta, cfg)
    j = np.arange(terms.shape[0])[:, None]
    kept = np.where(j < K[None, :], terms, 0.0)
    # c_{2k} and c_{2k+1} both carry (-1)^k, i.e. the sign pattern + + - - + + ...
    sgn = np.where((j // 2) % 2 == 0, 1.0, -1.0)
    even = (j % 2 == 0)
    signed = sgn * kept
    P = np.sum(np.where(even, signed, 0.0), axis=0)
    Q = np.sum(np.where(even, 0.0, signed), axis=0)
    # d/dzeta zeta^-j = -j zeta^-j / zeta
    dsigned = -j * signed / zeta[None, :]
    dP = np.sum(np.where(even, dsigned, 0.0), axis=0)
    dQ = np.sum(np.where(even, 0.0, dsigned), axis=0)
    omitted = terms[K, np.arange(x.size)]

    theta = zeta + math.pi / 4.0
    s, c = np.sin(theta), np.cos(theta)
    amp = _INV_SQRT_PI / x**0.25
    q = _INV_SQRT_PI * x**0.25
    inv6z = 1.0 / (6.0 * zeta)

    ai = amp * (s * P + cos_sign * c * Q)
    bi = amp * (c * P + s * Q)
    # derivative in x, then flipped to d/dxi
    dai_dx = q * (-inv6z * (s * P + cos_sign * c * Q)
                  + c * P - cos_sign * s * Q + s * dP + cos_sign * c * dQ)
    dbi_dx = q * (-inv6z * (c * P + s * Q) - s * P + c * Q + c * dP + s * dQ)
    # phase error from rounding zeta itself
    phase = 4 * _EPS * zeta * amp
    ai_err = amp * omitted + phase + 4 * _EPS * np.abs(ai)
    bi_err = amp * omitted + phase + 4 * _EPS * np.abs(bi)
    route = np.full(x.shape, Route.ASYMPTOTIC_NEG, dtype=object)
    return AiryArrays(ai, -dai_dx, bi, -dbi_dx, ai_err, bi_err, route)


def airy_asymptotic_neg(x: float, cfg: SeriesConfig = DEFAULT_CONFIG,
                        min_arg: float = ASYMPTOTIC_MIN) -> AiryValue:
    """Ai(-x) for large positive ``x``; the derivative is Ai'(-x), i.e. d/dxi."""
    ai, _ = _pair(asymptotic_neg_arrays(x, cfg, min_arg))
    return ai


# ---------------------------------------------------------------------------
# hybrid


def airy_arrays(xi, cfg: SeriesConfig = DEFAULT_CONFIG,
                threshold: float = SWITCHOVER) -> AiryArrays:
    """Vectorized hybrid evaluation; ``route`` entries are ``(HYBRID, via)``."""
    xi = _as_array(xi)
    out = [np.empty(xi.shape) for _ in range(6)]
    route = np.empty(xi.shape, dtype=object)
    masks = (
        (np.abs(xi) < threshold, Route.SERIES, lambda v: series_arrays(v, cfg)),
        (xi >= threshold, Route.ASYMPTOTIC_POS, lambda v: asymptotic_pos_arrays(v, cfg, min_arg=threshold)),
        (xi <= -threshold, Route.ASYMPTOTIC_NEG, lambda v: asymptotic_neg_arrays(-v, cfg, min_arg=threshold)),
    )
    for mask, via, fn in masks:
        if not mask.any():
            continue
        res = fn(xi[mask])
        for dst, src in zip(out, res[:6]):
            dst[mask] = src
        for i in np.flatnonzero(mask):
            route[i] = (Route.HYBRID, via)
    return AiryArrays(*out, route)


def airy(xi: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[AiryValue, AiryValue]:
    """Ai and Bi at ``xi`` through whichever route is accurate there."""
    return _pair(airy_arrays(xi, cfg))


def ai(xi, cfg: SeriesConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorized Ai by the hybrid evaluator."""
    return airy_arrays(xi, cfg).ai
