"""Scaled-form ADMM for the Lasso.

    x     = (A^T A + rho I)^-1 (A^T y + rho (z - u))
    z_new = soft_threshold(x + u, alpha / rho)
    u_new = u + x - z_new

The system matrix does not change between iterations, so its Cholesky
factor is computed once in ``init_state`` and carried in the state. The
sparse split variable z is the reported iterate.
"""

from __future__ import annotations

import logging

import numpy as np

from ..linalg import CholeskyFactor, cholesky, matvec_transpose
from ..problem import Algorithm, Family, ProblemInstance, RegularizerConfig, SolverConfig
from ..prox import soft_threshold
from .base import BaseSolver, IterateState, require_family

logger = logging.getLogger(__name__)


def admm_factor(instance: ProblemInstance, rho: float) -> CholeskyFactor:
    a = instance.a_matrix
    return cholesky(a.T @ a + rho * np.eye(instance.n))


def step_admm(
    state: IterateState,
    instance: ProblemInstance,
    reg: RegularizerConfig,
    rho: float,
    factor: CholeskyFactor | None = None,
) -> IterateState:
    require_family(reg, Family.L1, "ADMM")
    factor = factor or state.factor or admm_factor(instance, rho)
    n = instance.n
    z = state.z_dual if state.z_dual is not None else np.zeros(n)
    u = state.u_dual if state.u_dual is not None else np.zeros(n)
    x = factor.solve(matvec_transpose(instance.a_matrix, instance.y) + rho * (z - u))
    z_new = soft_threshold(x + u, reg.alpha_vector(n) / rho)
    return IterateState(x=x, t=state.t + 1, z_dual=z_new, u_dual=u + x - z_new, factor=factor)


class AdmmSolver(BaseSolver):
    algorithm = Algorithm.ADMM

    def init_state(self, instance, reg, config: SolverConfig, x0):
        factor = admm_factor(instance, config.rho)
        logger.debug("factored A^T A + rho I (n=%d, rho=%g)", instance.n, config.rho)
        x0 = np.array(x0, dtype=np.float64)
        return IterateState(x=x0, z_dual=x0.copy(), u_dual=np.zeros_like(x0), factor=factor)

    def step(self, state, instance, reg, config: SolverConfig):
        return step_admm(state, instance, reg, config.rho)

    def diagnostics(self, prev, state, config: SolverConfig) -> dict:
        return {
            "primal_residual": float(np.linalg.norm(state.x - state.z_dual)),
            "dual_residual": float(config.rho * np.linalg.norm(state.z_dual - prev.z_dual)),
        }
