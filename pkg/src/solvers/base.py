"""Abstract base class for iterative solvers.

Each solver implements ``step``, which maps an ``IterateState`` to the next
one without mutating it. ``init_state`` builds the t = 0 state (x_0 plus
whatever auxiliaries the algorithm carries) and ``diagnostics`` may return
extra per-iteration numbers for the trace. The default implementations
cover the non-momentum, non-splitting algorithms.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..linalg import CholeskyFactor, Vector, matvec, matvec_transpose
from ..problem import Algorithm, Family, ProblemInstance, RegularizerConfig, SolverConfig


@dataclass(frozen=True, eq=False)
class IterateState:
    """Current estimate plus algorithm-specific auxiliaries.

    ``v``/``u`` are the momentum point and coefficient of the FISTA family;
    ``z_dual``/``u_dual`` are the split variable and scaled dual of ADMM,
    whose cached ``factor`` solves (A^T A + rho I) x = b.
    """

    x: Vector
    t: int = 0
    v: Vector | None = None
    u: float | None = None
    z_dual: Vector | None = None
    u_dual: Vector | None = None
    factor: CholeskyFactor | None = None

    def __post_init__(self):
        if self.u is not None and not self.u >= 1.0:
            raise ConfigError(f"momentum coefficient must be >= 1, got {self.u}")

    @property
    def estimate(self) -> Vector:
        """The iterate reported in traces and used for stopping."""
        return self.z_dual if self.z_dual is not None else self.x

    def auxiliaries(self) -> tuple[Vector, ...]:
        return tuple(a for a in (self.v, self.z_dual, self.u_dual) if a is not None)


def require_family(reg: RegularizerConfig, family: Family, who: str) -> None:
    if reg.family is not family:
        raise ConfigError(f"{who} needs {family.value} regularization, got {reg.family.value}")


def landweber(x: Vector, instance: ProblemInstance, tau: float) -> Vector:
    """Gradient step x + tau A^T (y - A x)."""
    a = instance.a_matrix
    return x + tau * matvec_transpose(a, instance.y - matvec(a, x))


class BaseSolver(ABC):
    algorithm: Algorithm

    @property
    def name(self) -> str:
        return self.algorithm.label

    @property
    def family(self) -> Family:
        return self.algorithm.family

    def init_state(
        self, instance: ProblemInstance, reg: RegularizerConfig, config: SolverConfig, x0: Vector
    ) -> IterateState:
        return IterateState(x=np.array(x0, dtype=np.float64))

    @abstractmethod
    def step(
        self, state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, config: SolverConfig
    ) -> IterateState:
        """Return the state at t + 1."""
        ...

    def diagnostics(self, prev: IterateState, state: IterateState, config: SolverConfig) -> dict:
        return {}
