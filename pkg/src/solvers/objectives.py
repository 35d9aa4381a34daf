"""Objective and surrogate evaluators.

F(x) = 0.5 ||A x - y||^2 + sum_i alpha_i r(x_i) with r(x) = |x| (Lasso) or
r(x) = log(|x| + eps) (Log-Lasso). The log objective may be negative when
eps < 1.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..linalg import Vector, as_vector, matvec
from ..problem import Family, ProblemInstance, RegularizerConfig
from .base import require_family


def residual(x: Vector, instance: ProblemInstance) -> Vector:
    """A x - y."""
    return matvec(instance.a_matrix, as_vector(x, instance.n, "x")) - instance.y


def penalty(x: Vector, reg: RegularizerConfig) -> float:
    alpha = reg.alpha_vector(x.shape[0])
    if reg.family is Family.L1:
        return float(alpha @ np.abs(x))
    return float(alpha @ np.log(np.abs(x) + reg.epsilon))


def objective(x: Vector, instance: ProblemInstance, reg: RegularizerConfig, r: Vector | None = None) -> float:
    """F(x) for the family of ``reg``; pass ``r = A x - y`` if already known."""
    if r is None:
        r = residual(x, instance)
    return 0.5 * float(r @ r) + penalty(x, reg)


def objective_lasso(x: Vector, instance: ProblemInstance, reg: RegularizerConfig) -> float:
    require_family(reg, Family.L1, "objective_lasso")
    return objective(x, instance, reg)


def objective_loglasso(x: Vector, instance: ProblemInstance, reg: RegularizerConfig) -> float:
    require_family(reg, Family.LOG, "objective_loglasso")
    return objective(x, instance, reg)


def surrogate(x: Vector, zeta: Vector, instance: ProblemInstance, reg: RegularizerConfig, tau: float) -> float:
    """F(x) + ||x - zeta||^2 / (2 tau) - 0.5 ||A x - A zeta||^2.

    Majorizes F whenever tau <= ||A||_2^-2, with equality at x = zeta.
    """
    if not tau > 0:
        raise ConfigError(f"tau must be positive, got {tau}")
    zeta = as_vector(zeta, instance.n, "zeta")
    d = as_vector(x, instance.n, "x") - zeta
    ad = matvec(instance.a_matrix, d)
    return objective(x, instance, reg) + float(d @ d) / (2.0 * tau) - 0.5 * float(ad @ ad)
