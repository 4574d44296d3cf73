"""Finite-difference eigensolver for ``-u'' + V(x) u = lambda u`` on ``[0, L]``.

Independent of the Airy evaluators: second-order central differences with
Dirichlet ends, Sturm-sequence bisection for the lowest eigenvalues and
inverse iteration for the eigenvectors. ``V(x) = x`` is the dimensionless
bouncer; other potentials serve as self-tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceFailure, DomainError
from .spectrum import lambda_asymptotic

# Airy decay over 6 units leaves truncation shifts near 1e-11
MIN_MARGIN = 6.0
DEFAULT_MARGIN = 12.0
RESIDUAL_TOL = 1e-10


def linear_potential(x: np.ndarray) -> np.ndarray:
    return x


@dataclass(frozen=True)
class GridEigenSolution:
    grid_n: int
    domain_length: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (n_levels, grid_n - 1), unit Euclidean norm
    residuals: np.ndarray
    boundary: str = "dirichlet"

    @property
    def h(self) -> float:
        return self.domain_length / self.grid_n

    @property
    def x(self) -> np.ndarray:
        """Interior grid points."""
        return self.h * np.arange(1, self.grid_n)

    def continuum_vector(self, k: int) -> np.ndarray:
        """Eigenvector ``k`` (0-based) scaled so that ``sum u^2 h = 1``."""
        return self.eigenvectors[k] / math.sqrt(self.h)


def _sturm_counts(diag: np.ndarray, off2: float, shifts: np.ndarray) -> np.ndarray:
    """Number of eigenvalues below each shift (LDL^T pivots, one row at a time)."""
    # a vanishing pivot is treated as a small negative one, consistently
    # for the count and for the next step of the recurrence
    pivmin = np.finfo(float).tiny ** 0.5
    q = diag[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(int)
    for d in diag[1:]:
        q = d - shifts - off2 / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def _bisect_lowest(diag: np.ndarray, off: float, n_levels: int, max_iter: int = 200) -> np.ndarray:
    lo = np.full(n_levels, diag.min() - 2 * abs(off))
    hi = np.full(n_levels, diag.max() + 2 * abs(off))
    idx = np.arange(n_levels)
    off2 = off * off
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        width = hi - lo
        if np.all(width <= 2 * eps * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300):
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        above = _sturm_counts(diag, off2, mid) > idx
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    raise ConvergenceFailure(f"Sturm bisection did not converge in {max_iter} steps")


def _tridiag_solve(diag: np.ndarray, off: float, shifts: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``(T - shift_k I) y_k = rhs_k`` for every row k of ``rhs``."""
    m = diag.size
    tiny = np.finfo(float).eps * (np.abs(diag).max() + 2 * abs(off))
    c = np.empty((rhs.shape[0], m))
    y = np.empty_like(rhs)
    piv = diag[0] - shifts
    piv = np.where(np.abs(piv) < tiny, tiny, piv)
    c[:, 0] = off / piv
    y[:, 0] = rhs[:, 0] / piv
    for i in range(1, m):
        piv = diag[i] - shifts - off * c[:, i - 1]
        piv = np.where(np.abs(piv) < tiny, tiny, piv)
        c[:, i] = off / piv
        y[:, i] = (rhs[:, i] - off * y[:, i - 1]) / piv
    for i in range(m - 2, -1, -1):
        y[:, i] -= c[:, i] * y[:, i + 1]
    return y


def _apply(diag: np.ndarray, off: float, v: np.ndarray) -> np.ndarray:
    out = diag * v
    out[..., 1:] += off * v[..., :-1]
    out[..., :-1] += off * v[..., 1:]
    return out


def solve_fd(
    n_levels: int,
    grid_n: int,
    domain_length: float,
    potential: Callable[[np.ndarray], np.ndarray] | None = None,
    inverse_steps: int = 3,
) -> GridEigenSolution:
    """Lowest ``n_levels`` eigenpairs on ``grid_n`` intervals of ``[0, domain_length]``.

    Eigenvectors are unit vectors whose first component is positive.
    """
    if int(n_levels) != n_levels or n_levels < 1:
        raise DomainError(f"n_levels must be a positive integer, got {n_levels}")
    if int(grid_n) != grid_n or grid_n < 50 * n_levels:
        raise DomainError(f"grid_n must be >= 50 * n_levels = {50 * n_levels}, got {grid_n}")
    if not domain_length > 0:
        raise DomainError(f"domain_length must be positive, got {domain_length}")
    if potential is None:
        potential = linear_potential
        need = lambda_asymptotic(n_levels) + MIN_MARGIN
        if domain_length <= need:
            raise DomainError(f"domain_length {domain_length} too short for {n_levels} levels (> {need:.3f})")

    h = domain_length / grid_n
    x = h * np.arange(1, grid_n)
    diag = 2.0 / h**2 + np.asarray(potential(x), dtype=float)
    off = -1.0 / h**2

    vals = _bisect_lowest(diag, off, n_levels)
    if np.any(np.diff(vals) <= 0):
        raise ConvergenceFailure("grid eigenvalues are not simple")

    # perturb the shift slightly so the shifted matrix is not exactly singular
    shifts = vals * (1 + 4 * np.finfo(float).eps) + np.finfo(float).tiny
    rng = np.random.default_rng(0)
    vecs = rng.standard_normal((n_levels, x.size))
    for _ in range(inverse_steps):
        vecs = _tridiag_solve(diag, off, shifts, vecs)
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    vecs *= np.sign(vecs[:, :1])

    residuals = np.max(np.abs(_apply(diag, off, vecs) - vals[:, None] * vecs), axis=1)
    bad = residuals > RESIDUAL_TOL * np.abs(vals)
    if np.any(bad):
        raise ConvergenceFailure(f"inverse iteration residuals too large for levels {np.flatnonzero(bad) + 1}")
    return GridEigenSolution(int(grid_n), float(domain_length), vals, vecs, residuals)


def richardson(coarse: float, fine: float, ratio: float = 2.0, order: float = 2.0) -> float:
    """Cancel the leading ``h^order`` error of two results at spacings ``h`` and ``h/ratio``."""
    w = ratio**order
    return (w * fine - coarse) / (w - 1.0)


class ConvergenceStudy(NamedTuple):
    points: list[tuple[float, float]]  # (h, eigenvalue), coarse to fine
    order: float


def observed_order(points: Sequence[tuple[float, float]]) -> float:
    """Order ``p`` fitting ``lam(h) = lam0 + C h^p`` through the last three points."""
    (h1, l1), (h2, l2), (h3, l3) = points[-3:]
    target = (l1 - l2) / (l2 - l3)

    def mismatch(p):
        return (h1**p - h2**p) / (h2**p - h3**p) - target

    return brentq(mismatch, 0.1, 10.0)


def convergence_study(n: int, grids: Sequence[int], domain_length: float | None = None) -> ConvergenceStudy:
    """Eigenvalue ``n`` on each grid plus the observed convergence order."""
    grids = sorted(int(g) for g in grids)
    if len(grids) < 3 or len(set(grids)) != len(grids):
        raise DomainError(f"need at least three distinct grid sizes, got {grids}")
    if domain_length is None:
        domain_length = lambda_asymptotic(n) + DEFAULT_MARGIN
    points = []
    for g in grids:
        sol = solve_fd(n, g, domain_length)
        points.append((sol.h, float(sol.eigenvalues[n - 1])))
    return ConvergenceStudy(points, observed_order(points))
