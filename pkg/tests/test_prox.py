import math

import numpy as np
import pytest

from src.errors import AssumptionViolation, ConfigError
from src.prox import (
    ShrinkThresholdParams,
    check_assumption,
    gamma,
    log_params,
    prox_log,
    shrink_threshold,
    soft_threshold,
)

from .oracles import oracle_prox_1d


def _log_penalty(lam, eps):
    return lambda x: lam * np.log(np.abs(x) + eps)


def _log_grad(lam, eps):
    return lambda x: lam * np.sign(x) / (abs(x) + eps)


@pytest.mark.parametrize("z, expected", [(0.0, 0.0), (2.0, 1.5), (-0.3, 0.0), (-2.0, -1.5)])
def test_soft_threshold_examples(z, expected):
    assert soft_threshold(np.array([z]), 0.5)[0] == expected


def test_soft_threshold_per_component_lambda():
    out = soft_threshold(np.array([1.0, 1.0, -3.0]), np.array([0.5, 2.0, 1.0]))
    np.testing.assert_array_equal(out, [0.5, 0.0, -2.0])


def test_soft_threshold_rejects_negative_lambda():
    with pytest.raises(ConfigError):
        soft_threshold(np.ones(2), -0.1)


def test_shrink_threshold_examples():
    params = ShrinkThresholdParams(threshold=np.array([0.1]), shrink=np.array([0.05]))
    assert shrink_threshold(np.array([1.0]), params)[0] == pytest.approx(0.95)
    # the band is closed: the boundary goes to zero
    assert shrink_threshold(np.array([0.1]), params)[0] == 0.0
    assert shrink_threshold(np.array([-0.1]), params)[0] == 0.0


def test_shrink_threshold_with_equal_params_is_soft_threshold(rng):
    z = rng.normal(0.0, 2.0, size=200)
    lam = rng.uniform(0.0, 1.0, size=200)
    np.testing.assert_array_equal(
        shrink_threshold(z, ShrinkThresholdParams(threshold=lam, shrink=lam)),
        soft_threshold(z, lam),
    )


def test_shrink_threshold_params_validation():
    with pytest.raises(ConfigError):
        ShrinkThresholdParams(threshold=np.array([-0.1]), shrink=np.array([0.0]))
    with pytest.raises(ConfigError):
        ShrinkThresholdParams(threshold=np.zeros(2), shrink=np.zeros(3))


def test_gamma_boundary_value():
    for lam, eps in [(0.25, 1.0), (5e-5, 1e-2), (0.009, 0.1)]:
        assert gamma(lam / eps, lam, eps) == pytest.approx(lam / eps, rel=1e-12)


def test_gamma_closed_form_value():
    assert gamma(2.0, 0.25, 1.0) == pytest.approx((3.0 - math.sqrt(8.0)) / 2.0, rel=1e-14)
    assert gamma(2.0, 0.25, 1.0) == pytest.approx(0.0857864, abs=1e-7)


def test_gamma_large_argument_is_stable():
    z = 1e6
    assert gamma(z, 0.25, 1.0) == pytest.approx(0.25 / (z + 1.0), rel=1e-6)


def test_gamma_vectorized_returns_array():
    out = gamma(np.array([1.0, 2.0]), np.array([0.25, 0.25]), 1.0)
    assert isinstance(out, np.ndarray)
    assert isinstance(gamma(2.0, 0.25, 1.0), float)


def test_gamma_negative_discriminant():
    with pytest.raises(ConfigError, match="discriminant"):
        gamma(0.0, 1.0, 1.0)


def test_gamma_strictly_decreasing_and_bounded():
    lam, eps = 0.25, 1.0
    z = np.linspace(lam / eps + 1e-3, 10.0, 500)
    g = gamma(z, np.full_like(z, lam), eps)
    assert np.all(np.diff(g) < 0)
    assert np.all(g > 0)
    assert np.all(g < lam / eps)


def test_prox_log_examples():
    lam, eps = 0.25, 1.0
    out = prox_log(np.array([0.0, 2.0, -2.0, 0.25]), lam, eps)
    assert out[0] == 0.0
    assert out[1] == pytest.approx(1.9142136, abs=1e-7)
    assert out[2] == -out[1]
    assert out[3] == 0.0
    # both branches meet at the boundary
    assert 0.25 - gamma(0.25, lam, eps) == pytest.approx(0.0, abs=1e-15)


def test_prox_log_matches_oracle_example():
    lam, eps, z = 0.25, 1.0, 2.0
    expected = oracle_prox_1d(z, _log_penalty(lam, eps), abs(z) + 1.0, grid=2001, penalty_grad=_log_grad(lam, eps))
    assert prox_log(np.array([z]), lam, eps)[0] == pytest.approx(expected, abs=1e-9)


def test_oracle_reference_cases():
    assert oracle_prox_1d(3.0, lambda x: 0.0 * x, 4.0) == pytest.approx(3.0, abs=1e-9)
    assert oracle_prox_1d(2.0, lambda x: 0.5 * np.abs(x), 3.0) == pytest.approx(1.5, abs=1e-9)


def test_prox_log_agrees_with_oracle_on_random_triples():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10_000):
        eps = rng.uniform(1e-2, 1.0)
        lam = rng.uniform(0.01, 0.95) * eps * eps
        z = rng.uniform(-3.0, 3.0)
        got = prox_log(np.array([z]), lam, eps)[0]
        ref = oracle_prox_1d(z, _log_penalty(lam, eps), abs(z) + 1.0, grid=201, penalty_grad=_log_grad(lam, eps))
        worst = max(worst, abs(got - ref))
    assert worst <= 1e-8


def test_prox_log_odd_symmetry(rng):
    z = rng.normal(0.0, 1.0, size=500)
    lam = rng.uniform(0.0, 0.9e-2, size=500)
    np.testing.assert_array_equal(prox_log(-z, lam, 0.1), -prox_log(z, lam, 0.1))


def test_prox_log_properties(rng):
    eps = 0.1
    lam = rng.uniform(1e-4, 0.9 * eps * eps, size=1000)
    z = rng.uniform(-2.0, 2.0, size=1000)
    x = prox_log(z, lam, eps)
    assert np.all(np.abs(x) <= np.abs(z))
    # never shrinks more than soft thresholding at the same threshold
    assert np.all(np.abs(x) >= np.abs(soft_threshold(z, lam / eps)))
    outside = np.abs(z) > lam / eps
    stationarity = lam[outside] * np.sign(x[outside]) / (np.abs(x[outside]) + eps) + x[outside] - z[outside]
    assert np.max(np.abs(stationarity)) <= 1e-10
    np.testing.assert_array_equal(x[~outside], 0.0)


def test_prox_log_is_continuous_at_the_threshold():
    lam, eps = 5e-3, 0.1
    thr = lam / eps
    out = prox_log(np.array([thr - 1e-9, thr, thr + 1e-9]), lam, eps)
    assert np.max(np.abs(out)) <= 1e-7


def test_log_params_inside_band_has_zero_shrink():
    z = np.array([0.01, 1.0])
    params = log_params(z, 0.25, 1.0)
    np.testing.assert_array_equal(params.threshold, [0.25, 0.25])
    assert params.shrink[0] == 0.0
    assert params.shrink[1] == pytest.approx(gamma(1.0, 0.25, 1.0))


def test_assumption_violation_message():
    with pytest.raises(AssumptionViolation, match=r"^Assumption 1: lambda must be < epsilon\^2"):
        prox_log(np.ones(3), 2e-4, 1e-2)
    with pytest.raises(AssumptionViolation):
        check_assumption(np.array([1e-5, 2e-4]), 1e-2)
    check_assumption(np.array([1e-5, 9e-5]), 1e-2)


def test_shrink_threshold_passes_non_finite_values_through():
    params = ShrinkThresholdParams(threshold=np.full(4, 0.1), shrink=np.full(4, 0.05))
    out = shrink_threshold(np.array([np.nan, np.inf, -np.inf, 1.0]), params)
    assert np.isnan(out[0])
    assert out[1] == np.inf and out[2] == -np.inf
    assert out[3] == pytest.approx(0.95)
    assert np.isnan(soft_threshold(np.array([np.nan]), 0.5)[0])
