"""Dense linear algebra used by the solvers.

Matrices are plain 2-D ``float64`` numpy arrays (row-major). ``as_dense``
validates them once at the boundary; the hot-loop helpers below only check
shapes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import scipy.linalg as scilin

from .errors import ConfigError, DimensionMismatchError, LinAlgFailure

logger = logging.getLogger(__name__)

Vector = npt.NDArray[np.float64]
DenseMatrix = npt.NDArray[np.float64]

# Start vector of the power iteration is drawn from this seed so that the
# estimate is a deterministic function of the matrix.
SPECTRAL_SEED = 20230517
SPECTRAL_TOL = 1e-8
SPECTRAL_MAX_ITERS = 10_000


def as_dense(a) -> DenseMatrix:
    """Return ``a`` as a finite, non-empty, C-ordered float64 matrix."""
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    rows, cols = arr.shape
    if rows < 1 or cols < 1:
        raise DimensionMismatchError(f"matrix must be non-empty, got {rows}x{cols}")
    if not np.all(np.isfinite(arr)):
        raise ConfigError("matrix has non-finite entries")
    return arr


def as_vector(x, length: int | None = None, name: str = "vector") -> Vector:
    """Return ``x`` as a 1-D float64 array, optionally checking its length."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got ndim={arr.ndim}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatchError(f"{name} has length {arr.shape[0]}, expected {length}")
    return arr


def matvec(a: DenseMatrix, x: Vector) -> Vector:
    """A @ x."""
    if x.ndim != 1 or a.shape[1] != x.shape[0]:
        raise DimensionMismatchError(f"matvec: A is {a.shape[0]}x{a.shape[1]}, x has shape {x.shape}")
    return a @ x


def matvec_transpose(a: DenseMatrix, r: Vector) -> Vector:
    """A.T @ r."""
    if r.ndim != 1 or a.shape[0] != r.shape[0]:
        raise DimensionMismatchError(f"matvec_transpose: A is {a.shape[0]}x{a.shape[1]}, r has shape {r.shape}")
    return a.T @ r


def spectral_norm(a: DenseMatrix, tol: float = SPECTRAL_TOL, max_iters: int = SPECTRAL_MAX_ITERS) -> float:
    """Estimate ||A||_2 by power iteration on A^T A.

    The iteration stops once the estimate changes by less than ``tol``
    relative to its value. Raises ``LinAlgFailure`` for the zero matrix or
    when ``max_iters`` is exhausted.
    """
    if tol <= 0 or max_iters < 1:
        raise ConfigError("spectral_norm needs tol > 0 and max_iters >= 1")
    a = as_dense(a)
    if not np.any(a):
        raise LinAlgFailure("spectral norm of the zero matrix")

    rng = np.random.default_rng(SPECTRAL_SEED)
    v = rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    sigma_old = 0.0
    for it in range(1, max_iters + 1):
        g = a.T @ (a @ v)
        g_norm = np.linalg.norm(g)
        if g_norm == 0.0:
            # start vector landed in the null space
            v = rng.standard_normal(a.shape[1])
            v /= np.linalg.norm(v)
            continue
        v = g / g_norm
        sigma = float(np.linalg.norm(a @ v))
        if abs(sigma - sigma_old) <= tol * sigma:
            logger.debug("spectral norm %.12g after %d power iterations", sigma, it)
            return sigma
        sigma_old = sigma
    raise LinAlgFailure(f"power iteration did not converge in {max_iters} iterations (tol={tol:g})")


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower Cholesky factor of an SPD matrix, reusable across solves."""

    factor: DenseMatrix
    size: int

    def solve(self, b: Vector) -> Vector:
        if b.ndim != 1 or b.shape[0] != self.size:
            raise DimensionMismatchError(f"solve: system is {self.size}x{self.size}, b has shape {b.shape}")
        return scilin.cho_solve((self.factor, True), b, check_finite=False)


def cholesky(m: DenseMatrix) -> CholeskyFactor:
    """Factor a symmetric positive definite matrix."""
    m = as_dense(m)
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatchError(f"cholesky: matrix must be square, got {rows}x{cols}")
    scale = float(np.max(np.abs(m)))
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * scale):
        raise LinAlgFailure("cholesky: matrix is not symmetric")
    try:
        c, _ = scilin.cho_factor(m, lower=True, check_finite=False)
    except scilin.LinAlgError as exc:
        raise LinAlgFailure(f"cholesky: matrix is not positive definite ({exc})") from exc
    return CholeskyFactor(factor=c, size=rows)


def solve_spd(m: DenseMatrix, b: Vector, factor: CholeskyFactor | None = None) -> Vector:
    """Solve M x = b for SPD ``m``; pass ``factor`` to skip refactoring."""
    if factor is None:
        factor = cholesky(m)
    return factor.solve(as_vector(b, factor.size, "b"))
