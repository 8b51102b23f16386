"""Exception taxonomy shared by every module.

Numerical failure states (NaN, divergence, singular pivots) are raised,
never returned as values.
"""


class FpresumError(Exception):
    """Base class for all package errors."""


class ConfigurationError(FpresumError):
    """Invalid run configuration: bad precision, moment count, or flags."""


class DomainError(FpresumError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class SolverError(FpresumError):
    """Linear solve failed (numerically singular pivot)."""

    def __init__(self, message: str, pivot_index: int | None = None):
        super().__init__(message)
        self.pivot_index = pivot_index


class NumericalError(FpresumError):
    """Quadrature non-convergence or other runtime numerical failure."""


class DegeneracyError(NumericalError):
    """Singular Pade system: the requested approximant does not exist."""


class PoleAtEvaluationError(NumericalError):
    """Rational approximant denominator vanishes at the evaluation point."""


class TransformationBreakdownError(NumericalError):
    """Sequence transformation hit a vanishing remainder estimate."""


class InternalConsistencyError(FpresumError):
    """A quantity that must vanish (e.g. an imaginary residue) did not."""
