"""Zeros of Ai(-lambda): exact by root finding, approximate by closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .airy import DEFAULT_CONFIG, SeriesConfig, airy_arrays
from .errors import BracketFailure, DomainError, MaxIterations

DEFAULT_TOL = 1e-12


def _check_level(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"level index must be a positive integer, got {n!r}")
    return int(n)


def lambda_asymptotic(n: int) -> float:
    """Leading-order zero ``[3 pi/2 (n - 1/4)]^(2/3)`` from the sine-only form."""
    n = _check_level(n)
    return (1.5 * math.pi * (n - 0.25)) ** (2.0 / 3.0)


class Root(NamedTuple):
    value: float
    bracket: tuple[float, float]
    iterations: int


def _ai_minus(lam: float, cfg: SeriesConfig) -> tuple[float, float]:
    # Ai(-lam) and its derivative with respect to lam
    r = airy_arrays(-lam, cfg)
    return float(r.ai[0]), -float(r.aip[0])


def find_zero(n: int, tol: float = DEFAULT_TOL, cfg: SeriesConfig = DEFAULT_CONFIG,
              max_iter: int = 100) -> Root:
    """Locate the ``n``-th positive root of Ai(-lambda) with a certified bracket.

    Starts from the closed-form guess, brackets within 0.4 (then 0.5) of the
    local spacing ``pi / sqrt(lambda)``, and runs Newton steps that fall back
    to bisection whenever a step leaves the bracket.
    """
    n = _check_level(n)
    if not tol >= 1e-14:
        raise DomainError(f"tol must be >= 1e-14, got {tol}")
    guess = lambda_asymptotic(n)
    spacing = math.pi / math.sqrt(guess)
    for frac in (0.4, 0.5):
        a, b = guess - frac * spacing, guess + frac * spacing
        fa, fb = _ai_minus(a, cfg)[0], _ai_minus(b, cfg)[0]
        if fa * fb < 0:
            break
    else:
        err = BracketFailure(f"no sign change of Ai(-lambda) within {guess:.6g} +- {spacing / 2:.3g}")
        err.n = n
        raise err

    x = guess
    for it in range(1, max_iter + 1):
        fx, dfx = _ai_minus(x, cfg)
        if fx == 0.0 or (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if abs(fx) < tol * abs(dfx):
            d = 0.25 * tol
            lo, hi = _ai_minus(x - d, cfg)[0], _ai_minus(x + d, cfg)[0]
            if lo * hi < 0:
                return Root(x, (x - d, x + d), it)
        step = fx / dfx if dfx != 0.0 else math.inf
        x_new = x - step
        if not a < x_new < b:
            x_new = 0.5 * (a + b)
        if b - a < 0.5 * tol:
            x_new = 0.5 * (a + b)
            if _ai_minus(a, cfg)[0] * _ai_minus(b, cfg)[0] < 0:
                return Root(x_new, (a, b), it)
        x = x_new
    err = MaxIterations(f"zero {n} not converged in {max_iter} iterations")
    err.n = n
    raise err


def lambda_exact(n: int, tol: float = DEFAULT_TOL, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """The ``n``-th zero of Ai(-lambda), i.e. the n-th dimensionless level."""
    return find_zero(n, tol, cfg).value


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    lambda_exact: float
    lambda_asym: float
    rel_error: float
    bracket: tuple[float, float] | None = None


@dataclass(frozen=True)
class Spectrum:
    """Levels ``n = 1..n_max`` with exact and closed-form zeros."""

    entries: tuple[SpectrumEntry, ...]

    def __post_init__(self):
        ns = [e.n for e in self.entries]
        if ns != list(range(1, len(ns) + 1)):
            raise ValueError("spectrum levels must run 1, 2, ... without gaps")
        lam = [e.lambda_exact for e in self.entries]
        if any(b <= a for a, b in zip(lam, lam[1:])):
            raise ValueError("lambda_exact must increase strictly with n")

    @classmethod
    def from_values(cls, exact, brackets=None) -> "Spectrum":
        entries = []
        for i, lam in enumerate(exact):
            n = i + 1
            asym = lambda_asymptotic(n)
            entries.append(SpectrumEntry(n, float(lam), asym, abs(asym - lam) / lam,
                                         None if brackets is None else tuple(brackets[i])))
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[SpectrumEntry]:
        return iter(self.entries)

    def __getitem__(self, n: int) -> SpectrumEntry:
        """Entry for level ``n`` (1-based)."""
        return self.entries[_check_level(n) - 1]

    @property
    def n_max(self) -> int:
        return len(self.entries)

    @property
    def exact(self) -> np.ndarray:
        return np.array([e.lambda_exact for e in self.entries])

    @property
    def asymptotic(self) -> np.ndarray:
        return np.array([e.lambda_asym for e in self.entries])

    @property
    def rel_errors(self) -> np.ndarray:
        return np.array([e.rel_error for e in self.entries])


def build_spectrum(n_max: int, tol: float = DEFAULT_TOL, cfg: SeriesConfig = DEFAULT_CONFIG) -> Spectrum:
    """Exact and closed-form zeros for levels 1..n_max.

    Each exact zero is checked to sit between consecutive closed-form zeros;
    a violation means the evaluator and the closed form disagree badly.
    """
    n_max = _check_level(n_max)
    exact, brackets = [], []
    for n in range(1, n_max + 1):
        root = find_zero(n, tol, cfg)
        if not lambda_asymptotic(n) <= root.value < lambda_asymptotic(n + 1):
            err = BracketFailure(f"zero {n} = {root.value!r} breaks interlacing with the closed form")
            err.n = n
            raise err
        exact.append(root.value)
        brackets.append(root.bracket)
    return Spectrum.from_values(exact, brackets)


def loglog_slope(ns, values) -> float:
    """Least-squares slope of log(values) against log(ns)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    x = x - x.mean()
    return float(x @ (y - y.mean()) / (x @ x))


def fit_scaling_exponent(spec: Spectrum, n_lo: int, n_hi: int) -> float:
    """Power-law exponent of ``lambda_exact`` over levels ``n_lo..n_hi``."""
    if not (1 <= n_lo < n_hi <= spec.n_max) or n_hi - n_lo < 10:
        raise DomainError(f"need 1 <= n_lo < n_hi <= {spec.n_max} and n_hi - n_lo >= 10, "
                          f"got [{n_lo}, {n_hi}]")
    ns = np.arange(n_lo, n_hi + 1)
    return loglog_slope(ns, spec.exact[n_lo - 1:n_hi])
