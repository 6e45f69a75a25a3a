"""Exception hierarchy and CLI exit codes."""

import math
from typing import Any

EXIT_OK = 0
EXIT_CONVERGENCE = 2
EXIT_CONFIG = 3


class GafZeroError(Exception):
    """Base class for all package errors."""

    exit_code: int = 1


class ConfigError(GafZeroError, ValueError):
    """Malformed literal, unknown key or inconsistent run configuration."""

    exit_code = EXIT_CONFIG


class InvalidDomainError(ConfigError):
    """Domain violates the shape constraints (self-intersection, cusp, chart)."""


class ChartDomainError(GafZeroError, ValueError):
    """Point lies outside the chart of the ensemble."""

    exit_code = EXIT_CONFIG


class DegenerateSampleError(GafZeroError):
    """Every coefficient of a sample is zero."""

    exit_code = EXIT_CONVERGENCE


class ConvergenceError(GafZeroError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = EXIT_CONVERGENCE


class RootFindingError(ConvergenceError):
    """Simultaneous root iteration did not converge."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial


class NearBoundaryZeroError(ConvergenceError):
    """Winding number could not be rounded safely; a zero sits close to the contour."""

    def __init__(self, message: str, residual: float = math.nan) -> None:
        super().__init__(message)
        self.residual = residual


class QuadratureError(ConvergenceError):
    """Quadrature refinement did not settle, or produced an impossible value."""

    def __init__(self, message: str, table: list[tuple[int, float, float]] | None = None) -> None:
        super().__init__(message)
        self.table = table or []


class DegenerateTrialsError(ConvergenceError):
    """Too many Monte Carlo trials were flagged as degenerate."""
