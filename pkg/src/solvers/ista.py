"""ISTA and its adaptive-shrinkage variant AD-ISTA.

Both take a Landweber step z = x + tau A^T (y - A x) and then threshold.
ISTA uses soft thresholding with lambda = tau * alpha (threshold and
shrink both lambda). AD-ISTA applies the closed-form log prox: threshold
lambda / eps and shrink gamma(z), which is large near zero and vanishes as
|z| grows.
"""

from __future__ import annotations

from dataclasses import replace

from ..problem import Algorithm, Family, ProblemInstance, RegularizerConfig, SolverConfig
from ..prox import prox_log, soft_threshold
from .base import BaseSolver, IterateState, landweber, require_family


def step_ista(state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> IterateState:
    require_family(reg, Family.L1, "ISTA")
    z = landweber(state.x, instance, tau)
    return replace(state, x=soft_threshold(z, tau * reg.alpha_vector(instance.n)), t=state.t + 1)


def step_ad_ista(state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> IterateState:
    require_family(reg, Family.LOG, "AD-ISTA")
    z = landweber(state.x, instance, tau)
    return replace(state, x=prox_log(z, tau * reg.alpha_vector(instance.n), reg.epsilon), t=state.t + 1)


class IstaSolver(BaseSolver):
    algorithm = Algorithm.ISTA

    def step(self, state, instance, reg, config: SolverConfig):
        return step_ista(state, instance, reg, config.tau)


class AdIstaSolver(BaseSolver):
    algorithm = Algorithm.AD_ISTA

    def step(self, state, instance, reg, config: SolverConfig):
        return step_ad_ista(state, instance, reg, config.tau)
