"""High-precision quadrature oracle for Ai, Bi and derivatives.

Shares no code with the library. The defining integral
``Ai(x) = (1/pi) int_0^inf cos(t^3/3 + x t) dt`` is rotated onto the ray
``t = s exp(i pi/6)``, which turns the oscillation into a decaying factor:

    Ai(x) = (1/pi) int_0^inf exp(-s^3/3 - x s/2) cos(sqrt3 x s/2 + pi/6) ds

and likewise for the ``sin`` part of Bi.
"""

from functools import lru_cache

import mpmath

_DPS = 30
_CUTS = [0, 1, 2, 3, 4, 5, 7, mpmath.inf]


def _damped(x, trig, weight, cuts=_CUTS, method="tanh-sinh"):
    r3 = mpmath.sqrt(3)

    def integrand(s):
        return weight(s) * mpmath.exp(-s**3 / 3 - x * s / 2) * trig(r3 * x * s / 2 + mpmath.pi / 6)

    return mpmath.quad(integrand, cuts, method=method)


@lru_cache(maxsize=None)
def ai_value_oracle(x: float) -> float:
    """Ai(x) alone; cheaper, for sweeps over many points (|x| <= 10)."""
    with mpmath.workdps(25):
        x = mpmath.mpf(x)
        val = _damped(x, mpmath.cos, lambda s: 1, [0, 2, 4, 7, mpmath.inf], "gauss-legendre")
        return float(val / mpmath.pi)


@lru_cache(maxsize=None)
def ai_oracle(x: float) -> tuple[float, float]:
    """(Ai(x), Ai'(x))."""
    with mpmath.workdps(_DPS):
        x = mpmath.mpf(x)
        r3 = mpmath.sqrt(3)
        val = _damped(x, mpmath.cos, lambda s: 1)
        # d/dx of the integrand: -s/2 * cos(.) - sqrt3 s/2 * sin(.)
        d1 = _damped(x, mpmath.cos, lambda s: -s / 2)
        d2 = _damped(x, mpmath.sin, lambda s: -r3 * s / 2)
        return float(val / mpmath.pi), float((d1 + d2) / mpmath.pi)


@lru_cache(maxsize=None)
def bi_oracle(x: float) -> tuple[float, float]:
    """(Bi(x), Bi'(x)) from ``(1/pi) int [exp(-t^3/3 + x t) + sin(t^3/3 + x t)] dt``."""
    with mpmath.workdps(_DPS):
        x = mpmath.mpf(x)
        r3 = mpmath.sqrt(3)
        peak = mpmath.sqrt(abs(x))
        cuts = [0, peak, 2 * peak + 3, 3 * peak + 6, mpmath.inf]
        grow = mpmath.quad(lambda t: mpmath.exp(-t**3 / 3 + x * t), cuts)
        dgrow = mpmath.quad(lambda t: t * mpmath.exp(-t**3 / 3 + x * t), cuts)
        osc = _damped(x, mpmath.sin, lambda s: 1)
        # d/dx: -s/2 * sin(.) + sqrt3 s/2 * cos(.)
        d1 = _damped(x, mpmath.sin, lambda s: -s / 2)
        d2 = _damped(x, mpmath.cos, lambda s: r3 * s / 2)
        return float((grow + osc) / mpmath.pi), float((dgrow + d1 + d2) / mpmath.pi)
