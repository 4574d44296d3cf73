"""Quantum bouncer numerics: Airy functions from first principles, the
gravitational spectrum and eigenstates, and a finite-difference cross-check."""

from .airy import AiryValue, Route, SeriesConfig, ai, airy
from .bouncer import (
    BouncerSystem,
    Eigenstate,
    eigenstate,
    energy_asymptotic,
    energy_exact,
    eval_wavefunction,
    make_system,
    natural_system,
)
from .errors import BouncerError, DomainError
from .oracle_fd import GridEigenSolution, convergence_study, richardson, solve_fd
from .spectrum import Spectrum, build_spectrum, fit_scaling_exponent, lambda_asymptotic, lambda_exact

__version__ = "0.1.0"
