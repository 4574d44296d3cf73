"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class BouncerError(Exception):
    """Base class. ``n`` is set when the failure belongs to a specific level."""

    n: int | None = None


class DomainError(BouncerError, ValueError):
    """Argument outside the domain where an operation is defined."""


class NonConvergence(BouncerError, ArithmeticError):
    """A series hit ``max_terms`` before its terms fell below ``abs_tol``."""


class BracketFailure(BouncerError, ArithmeticError):
    """No sign change of Ai(-lambda) where one was expected."""


class MaxIterations(BouncerError, ArithmeticError):
    """An iterative solver ran out of iterations."""


class QuadratureFailure(BouncerError, ArithmeticError):
    """Adaptive quadrature could not meet its tolerance."""


class ConvergenceFailure(BouncerError, ArithmeticError):
    """Bisection or inverse iteration in the grid eigensolver stalled."""
