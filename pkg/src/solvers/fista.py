"""Momentum (FISTA-type) variants of ISTA and AD-ISTA.

Given v_0 = x_0 and u_0 = 1:

    z_t     = v_t + tau A^T (y - A v_t)
    x_{t+1} = prox(z_t)
    u_{t+1} = (1 + sqrt(1 + 4 u_t^2)) / 2
    v_{t+1} = x_{t+1} + ((u_t - 1) / u_{t+1}) (x_{t+1} - x_t)

No restart is applied. Because u_0 = 1 the first iterate coincides with
the non-accelerated one.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import ConfigError
from ..linalg import Vector
from ..problem import Algorithm, Family, ProblemInstance, RegularizerConfig, SolverConfig
from ..prox import prox_log, soft_threshold
from .base import BaseSolver, IterateState, landweber, require_family


def next_momentum(u: float) -> float:
    return (1.0 + math.sqrt(1.0 + 4.0 * u * u)) / 2.0


def _momentum_step(
    state: IterateState, instance: ProblemInstance, tau: float, prox: Callable[[Vector], Vector], who: str
) -> IterateState:
    if state.v is None or state.u is None:
        raise ConfigError(f"{who}: momentum state is not initialized (need v_0 = x_0, u_0 = 1)")
    x_next = prox(landweber(state.v, instance, tau))
    u_next = next_momentum(state.u)
    v_next = x_next + ((state.u - 1.0) / u_next) * (x_next - state.x)
    return IterateState(x=x_next, t=state.t + 1, v=v_next, u=u_next)


def step_fista(state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> IterateState:
    require_family(reg, Family.L1, "FISTA")
    lam = tau * reg.alpha_vector(instance.n)
    return _momentum_step(state, instance, tau, lambda z: soft_threshold(z, lam), "FISTA")


def step_ad_fista(state: IterateState, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> IterateState:
    require_family(reg, Family.LOG, "AD-FISTA")
    lam = tau * reg.alpha_vector(instance.n)
    return _momentum_step(state, instance, tau, lambda z: prox_log(z, lam, reg.epsilon), "AD-FISTA")


class _MomentumSolver(BaseSolver):
    def init_state(self, instance, reg, config, x0):
        x0 = np.array(x0, dtype=np.float64)
        return IterateState(x=x0, v=x0.copy(), u=1.0)


class FistaSolver(_MomentumSolver):
    algorithm = Algorithm.FISTA

    def step(self, state, instance, reg, config: SolverConfig):
        return step_fista(state, instance, reg, config.tau)


class AdFistaSolver(_MomentumSolver):
    algorithm = Algorithm.AD_FISTA

    def step(self, state, instance, reg, config: SolverConfig):
        return step_ad_fista(state, instance, reg, config.tau)
