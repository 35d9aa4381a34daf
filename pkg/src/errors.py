"""Exception types shared across the package.

Validation problems derive from ``ValueError`` and numerical breakdowns from
``RuntimeError`` so callers that only know the builtins still catch them.
The CLI maps the first group to exit code 1 and the second to exit code 2.
"""

from __future__ import annotations


class SparseBenchError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SparseBenchError, ValueError):
    """An invalid hyperparameter, dimension or configuration value."""


class AssumptionViolation(ConfigError):
    """Log regularization with lambda_i >= epsilon^2 for some component."""

    def __init__(self, max_lambda: float, epsilon: float):
        self.max_lambda = max_lambda
        self.epsilon = epsilon
        super().__init__(
            f"Assumption 1: lambda must be < epsilon^2 "
            f"(max lambda={max_lambda:.6g}, epsilon^2={epsilon * epsilon:.6g})"
        )


class DimensionMismatchError(ConfigError):
    """Array sizes that disagree with each other or with a file header."""


class InstanceFormatError(SparseBenchError, ValueError):
    """An instance file that cannot be parsed."""


class LinAlgFailure(SparseBenchError, RuntimeError):
    """Zero matrix, non-convergent power iteration or a non-SPD system."""


class SolverDivergedError(SparseBenchError, RuntimeError):
    """Non-finite values appeared in the iterates."""

    def __init__(self, algorithm: str, iteration: int):
        self.algorithm = algorithm
        self.iteration = iteration
        super().__init__(f"{algorithm}: non-finite iterate at t={iteration}")
