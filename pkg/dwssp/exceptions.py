"""
Custom exception classes for dwssp
"""
from typing import List, Optional


class DwsspError(Exception):
    """Base exception for all dwssp errors"""
    pass


class DwsspValidationError(DwsspError, ValueError):
    """Exception raised for parameter and domain validation errors"""
    pass


class MethodFormatError(DwsspValidationError):
    """Exception raised when a method document cannot be parsed

    ``line``/``column`` are set for JSON syntax errors, ``field`` for
    missing or malformed entries.
    """

    def __init__(self, message: str = "", line: Optional[int] = None,
                 column: Optional[int] = None, field: Optional[str] = None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.field = field


class UnsupportedOrderError(DwsspValidationError):
    """Exception raised when order conditions beyond the supported depth are requested"""
    pass


class NotExplicitError(DwsspValidationError):
    """Exception raised when an explicit representation is required"""
    pass


class NegativeGammaError(DwsspValidationError):
    """Exception raised when an amplification expansion has negative weights"""
    pass


class ExperimentError(DwsspValidationError):
    """Exception raised for unsupported experiment problems or times"""
    pass


class SingularMatrixError(DwsspError):
    """Exception raised when a matrix that must be inverted is rank-deficient"""
    pass


class PoleError(DwsspError):
    """Exception raised when a rational function is evaluated at a pole"""
    pass


class InfeasibleOrderError(DwsspError):
    """Exception raised when no method satisfies the requested order conditions"""
    pass


class UnboundedCoefficientError(DwsspError):
    """Exception raised when a method stays feasible up to the bisection bracket cap"""

    def __init__(self, message: str = "", cap: float = 0.0):
        super().__init__(message)
        self.cap = cap


class LpCyclingError(DwsspError):
    """Exception raised when the simplex pivot guard trips"""

    def __init__(self, message: str = "", pivots: int = 0):
        super().__init__(message)
        self.pivots = pivots


class CertificationError(DwsspError):
    """Exception raised when bisection finds a non-monotone feasibility pattern"""
    pass


class SolverError(DwsspError):
    """Exception raised for time-stepping failures"""
    pass


class ConvergenceError(SolverError):
    """Exception raised when Newton iteration does not converge"""

    def __init__(self, message: str = "", iterations: int = 0,
                 residual_history: Optional[List[float]] = None):
        super().__init__(message)
        self.iterations = iterations
        self.residual_history = list(residual_history or [])

    @property
    def final_residual(self) -> float:
        return self.residual_history[-1] if self.residual_history else float("nan")


class HistoryLengthError(SolverError):
    """Exception raised when a multistep history does not match the step count"""
    pass
