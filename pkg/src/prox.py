"""Shrinkage-thresholding operators.

All operators act componentwise on 1-D float64 arrays. ``lam`` may be a
scalar or a vector of the same length as ``z``.

The generalized operator ``shrink_threshold`` zeroes every component inside
``[-threshold, threshold]`` and moves the others towards zero by ``shrink``.
Soft thresholding is the case ``threshold == shrink == lam``; the proximal
map of ``lam * log(|x| + eps)`` is the case ``threshold = lam / eps`` and
``shrink = gamma(z)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolation, ConfigError
from .linalg import Vector, as_vector


def _per_component(values, z: Vector, name: str) -> Vector:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 0:
        arr = np.full(z.shape, float(arr))
    elif arr.shape != z.shape:
        raise ConfigError(f"{name} has shape {arr.shape}, expected {z.shape}")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ConfigError(f"{name} must be finite and nonnegative")
    return arr


def check_assumption(lam, epsilon: float) -> None:
    """Raise ``AssumptionViolation`` unless every lambda_i < epsilon^2."""
    if not epsilon > 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    lam = np.asarray(lam, dtype=np.float64)
    top = float(np.max(lam)) if lam.size else 0.0
    if top >= epsilon * epsilon:
        raise AssumptionViolation(top, epsilon)


@dataclass(frozen=True)
class ShrinkThresholdParams:
    """Per-component zeroing half-width and shrinkage amount."""

    threshold: Vector
    shrink: Vector

    def __post_init__(self):
        th = np.asarray(self.threshold, dtype=np.float64)
        sh = np.asarray(self.shrink, dtype=np.float64)
        if th.shape != sh.shape:
            raise ConfigError(f"threshold shape {th.shape} != shrink shape {sh.shape}")
        if np.any(th < 0) or np.any(sh < 0):
            raise ConfigError("threshold and shrink must be nonnegative")
        object.__setattr__(self, "threshold", th)
        object.__setattr__(self, "shrink", sh)


def shrink_threshold(z, params: ShrinkThresholdParams) -> Vector:
    """z - shrink above +threshold, z + shrink below -threshold, 0 in between."""
    z = as_vector(z, name="z")
    th = _per_component(params.threshold, z, "threshold")
    sh = _per_component(params.shrink, z, "shrink")
    out = np.zeros_like(z)
    pos = z > th
    neg = z < -th
    out[pos] = z[pos] - sh[pos]
    out[neg] = z[neg] + sh[neg]
    # non-finite components pass through unchanged
    return np.where(np.isfinite(z), out, z)


def soft_threshold(z, lam) -> Vector:
    """sign(z) * max(|z| - lam, 0)."""
    z = as_vector(z, name="z")
    lam = _per_component(lam, z, "lambda")
    return shrink_threshold(z, ShrinkThresholdParams(threshold=lam, shrink=lam))


def gamma(z, lam, epsilon: float):
    """Adaptive shrinkage of the log proximal map.

    Evaluates (|z| + eps - sqrt((|z| + eps)^2 - 4 lam)) / 2 in the
    cancellation-free form 2 lam / (|z| + eps + sqrt(...)). Meant for
    |z| >= lam / eps, where the result lies in (0, lam / eps].
    Accepts scalars or arrays and returns the same kind.
    """
    a = np.abs(np.asarray(z, dtype=np.float64)) + epsilon
    lam = np.asarray(lam, dtype=np.float64)
    disc = a * a - 4.0 * lam
    if np.any(disc < 0):
        raise ConfigError("gamma: negative discriminant; |z| is inside the zero band or lambda >= epsilon^2")
    out = 2.0 * lam / (a + np.sqrt(disc))
    return float(out) if out.ndim == 0 else out


def log_params(z: Vector, lam, epsilon: float) -> ShrinkThresholdParams:
    """Threshold lam/eps and shrink gamma(z) outside the band (0 inside)."""
    lam = _per_component(lam, z, "lambda")
    threshold = lam / epsilon
    shrink = np.zeros_like(z)
    outside = np.abs(z) > threshold
    shrink[outside] = gamma(z[outside], lam[outside], epsilon)
    return ShrinkThresholdParams(threshold=threshold, shrink=shrink)


def prox_log(z, lam, epsilon: float) -> Vector:
    """argmin_x sum_i lam_i log(|x_i| + eps) + 0.5 ||x - z||^2.

    Closed form, valid when lam_i < eps^2 for every i. The boundary
    |z_i| = lam_i / eps maps to 0.
    """
    z = as_vector(z, name="z")
    lam = _per_component(lam, z, "lambda")
    check_assumption(lam, epsilon)
    return shrink_threshold(z, log_params(z, lam, epsilon))
