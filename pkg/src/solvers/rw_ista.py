"""Reweighted ISTA.

Weights w_i = 1 / (|x_i| + eps) are recomputed from the current iterate on
every step, then soft thresholding is applied with lambda_i * w_i, so shrink
and threshold stay equal (unlike AD-ISTA).
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..linalg import Vector
from ..problem import Algorithm, Family, ProblemInstance, RegularizerConfig, SolverConfig
from ..prox import soft_threshold
from .base import BaseSolver, IterateState, landweber, require_family


def reweights(x: Vector, epsilon: float) -> Vector:
    return 1.0 / (np.abs(x) + epsilon)


def step_rw_ista(state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> IterateState:
    require_family(reg, Family.LOG, "RW-ISTA")
    lam_w = tau * reg.alpha_vector(instance.n) * reweights(state.x, reg.epsilon)
    z = landweber(state.x, instance, tau)
    return replace(state, x=soft_threshold(z, lam_w), t=state.t + 1)


class RwIstaSolver(BaseSolver):
    algorithm = Algorithm.RW_ISTA

    def step(self, state, instance, reg, config: SolverConfig):
        return step_rw_ista(state, instance, reg, config.tau)
