"""Independent reference computations for the tests.

Nothing here imports the solver code: products are naive loops, one-step
oracles are written component by component, and the 1-D prox oracle
minimizes numerically.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar


def naive_matvec(a, x):
    rows, cols = len(a), len(a[0])
    out = [0.0] * rows
    for i in range(rows):
        acc = 0.0
        for j in range(cols):
            acc += a[i][j] * x[j]
        out[i] = acc
    return np.array(out)


def naive_matvec_transpose(a, r):
    return naive_matvec([list(col) for col in zip(*a)], r)


def naive_objective(x, a, y, alpha, epsilon=None):
    """0.5 ||Ax - y||^2 + sum alpha_i r(x_i), r = |.| or log(|.| + eps)."""
    ax = naive_matvec(a, x)
    fit = 0.5 * sum((ax[i] - y[i]) ** 2 for i in range(len(y)))
    alpha = [alpha] * len(x) if np.ndim(alpha) == 0 else list(alpha)
    if epsilon is None:
        pen = sum(alpha[j] * abs(x[j]) for j in range(len(x)))
    else:
        pen = sum(alpha[j] * math.log(abs(x[j]) + epsilon) for j in range(len(x)))
    return fit + pen


def _soft(z, lam):
    if z > lam:
        return z - lam
    if z < -lam:
        return z + lam
    return 0.0


def _log_prox(z, lam, eps):
    if abs(z) <= lam / eps:
        return 0.0
    a = abs(z) + eps
    g = (a - math.sqrt(a * a - 4.0 * lam)) / 2.0
    return z - g if z > 0 else z + g


def _landweber(x, a, y, tau):
    r = [yi - ri for yi, ri in zip(y, naive_matvec(a, x))]
    g = naive_matvec_transpose(a, r)
    return [x[j] + tau * g[j] for j in range(len(x))]


def one_step_ista(x, a, y, tau, alpha):
    return np.array([_soft(zj, tau * alpha) for zj in _landweber(x, a, y, tau)])


def one_step_ad_ista(x, a, y, tau, alpha, eps):
    return np.array([_log_prox(zj, tau * alpha, eps) for zj in _landweber(x, a, y, tau)])


def one_step_rw_ista(x, a, y, tau, alpha, eps):
    z = _landweber(x, a, y, tau)
    return np.array([_soft(z[j], tau * alpha / (abs(x[j]) + eps)) for j in range(len(x))])


def one_step_admm_from_zero(a, y, alpha, rho):
    """x = (A^T A + rho I)^-1 A^T y, z = soft(x, alpha/rho), u = x - z."""
    a = np.asarray(a, dtype=float)
    n = a.shape[1]
    x = np.linalg.solve(a.T @ a + rho * np.eye(n), a.T @ np.asarray(y, dtype=float))
    z = np.array([_soft(v, alpha / rho) for v in x])
    return x, z, x - z


def oracle_prox_1d(z, penalty, search_halfwidth, grid=2001, penalty_grad=None):
    """argmin_x penalty(x) + 0.5 (x - z)^2 over [-search_halfwidth, search_halfwidth].

    ``penalty`` must accept numpy arrays. Grid search, then a bounded scalar
    minimization in the offset from the best grid point (so the tolerance
    does not scale with |x|), then, if ``penalty_grad`` is given, a root of
    x - z + penalty'(x) bracketed on the same half-line. The candidate 0 is
    compared last because the penalties of interest have a kink there.
    """
    h = float(search_halfwidth)
    xs = np.linspace(-h, h, grid)
    vals = penalty(xs) + 0.5 * (xs - z) ** 2
    c = float(xs[int(np.argmin(vals))])
    step = 2.0 * h / (grid - 1)

    def offset_cost(d):
        return penalty(c + d) - penalty(c) + 0.5 * d * (2.0 * c + d - 2.0 * z)

    lo, hi = max(-h, c - step) - c, min(h, c + step) - c
    res = minimize_scalar(offset_cost, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
    x = c + float(res.x)

    if penalty_grad is not None and x != 0.0:

        def stationarity(t):
            return t - z + penalty_grad(t)

        a, b = x - step, x + step
        if x > 0:
            a = max(a, 0.0)
        else:
            b = min(b, 0.0)
        ga, gb = stationarity(a), stationarity(b)
        if ga * gb < 0:
            x = brentq(stationarity, a, b, xtol=1e-15, maxiter=200)

    # cost(x) - cost(0), written without forming either cost
    gain = penalty(x) - penalty(0.0) + 0.5 * x * (x - 2.0 * z)
    return float(x) if gain < 0 else 0.0
