"""Different algorithms for the same objective end at the same point."""

import itertools

import numpy as np
import pytest

from src.problem import Algorithm, RegularizerConfig, SolverConfig, StopKind, StoppingRule, generate_instance, recommended_tau
from src.solvers import objective, run


@pytest.fixture(scope="module")
def instance():
    return generate_instance(50, 100, 5, noise_std=0.0, seed=31)


def _solve(instance, algorithm, reg, tol=1e-10):
    cfg = SolverConfig(
        algorithm,
        tau=recommended_tau(instance),
        max_iters=100_000,
        stop=StoppingRule(StopKind.RELATIVE_STEP, tol),
    )
    result = run(instance, reg, cfg)
    assert result.converged, algorithm
    return result


def test_lasso_solvers_agree(instance):
    reg = RegularizerConfig.l1(1e-3)
    finals = {alg: _solve(instance, alg, reg).x_final for alg in (Algorithm.ISTA, Algorithm.FISTA, Algorithm.ADMM)}
    for a, b in itertools.combinations(finals, 2):
        assert np.max(np.abs(finals[a] - finals[b])) <= 1e-4, (a, b)
    # same objective value as well
    vals = [objective(x, instance, reg.bind(1.0)) for x in finals.values()]
    assert max(vals) - min(vals) <= 1e-8


def test_log_lasso_solvers_agree(instance):
    reg = RegularizerConfig.log(4e-4, 1e-2)
    x_ad = _solve(instance, Algorithm.AD_ISTA, reg).x_final
    x_fast = _solve(instance, Algorithm.AD_FISTA, reg).x_final
    assert np.max(np.abs(x_ad - x_fast)) <= 1e-4


def test_admm_satisfies_lasso_optimality(instance):
    alpha = 1e-3
    result = _solve(instance, Algorithm.ADMM, RegularizerConfig.l1(alpha), tol=1e-12)
    z = result.x_final
    grad = instance.a_matrix.T @ (instance.a_matrix @ z - instance.y)
    on = z != 0
    # gradient + alpha * sign(z) = 0 on the support, |gradient| <= alpha off it
    assert np.max(np.abs(grad[on] + alpha * np.sign(z[on]))) <= 1e-6
    assert np.max(np.abs(grad[~on])) <= alpha + 1e-6
