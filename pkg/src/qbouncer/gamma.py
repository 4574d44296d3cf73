"""Gamma and log-gamma via the Lanczos approximation (g=7, n=9).

Relative accuracy is better than 1e-13 on [0.5, 50]; the reflection formula
covers arguments below 1/2.
"""

from __future__ import annotations

import math

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _series(x: float) -> float:
    # x is the shifted argument (original minus one)
    acc = _COEF[0]
    for i, c in enumerate(_COEF[1:], start=1):
        acc += c / (x + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for real ``x`` that is not a non-positive integer."""
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    t = x + _G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * _series(x)


def lgamma(x: float) -> float:
    """Natural log of ``|gamma(x)|``; usable far past the overflow of gamma."""
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.log(math.pi / abs(math.sin(math.pi * x))) - lgamma(1.0 - x)
    x -= 1.0
    t = x + _G + 0.5
    return _LOG_SQRT_2PI + (x + 0.5) * math.log(t) - t + math.log(_series(x))
