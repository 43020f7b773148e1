"""Exception hierarchy shared across the package."""


class KappaRupError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KappaRupError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergentIntegralError(DomainError):
    """The requested integral does not converge (heavy tail wins)."""


class BelowMinimalLengthError(DomainError):
    """A position uncertainty below the minimal length hbar*kappa*sqrt(zeta)."""


class GridTooSmallError(KappaRupError, ValueError):
    """A grid has too few points for the finite-difference stencil."""


class UnitMismatchError(KappaRupError, ValueError):
    """A tagged quantity was passed with the wrong unit."""


class InfeasibleMeanError(KappaRupError, ValueError):
    """The requested mean energy is not strictly inside the energy range."""


class NonConvergenceError(KappaRupError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""
