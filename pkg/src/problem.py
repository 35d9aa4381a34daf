"""Problem instances and solver configuration.

A ``ProblemInstance`` is the triple (A, y, x_true) of a linear sparse
recovery experiment. ``RegularizerConfig`` selects the penalty
(``alpha * |x|`` or ``alpha * log(|x| + eps)``) and, once bound to a
stepsize, the per-component prox weight ``lambda = tau * alpha``.
``SolverConfig`` picks the algorithm and its iteration controls.

Everything here is immutable after construction; arrays are stored
read-only.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, DimensionMismatchError
from .linalg import DenseMatrix, Vector, as_dense, as_vector, spectral_norm
from .prox import check_assumption

logger = logging.getLogger(__name__)

DEFAULT_MAGNITUDES = (1.0, 2.0)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


class Family(str, enum.Enum):
    L1 = "l1"
    LOG = "log"


class Algorithm(str, enum.Enum):
    ISTA = "ista"
    FISTA = "fista"
    AD_ISTA = "ad-ista"
    AD_FISTA = "ad-fista"
    RW_ISTA = "rw-ista"
    ADMM = "admm"

    @property
    def label(self) -> str:
        return self.value.upper()

    @property
    def family(self) -> Family:
        if self in (Algorithm.ISTA, Algorithm.FISTA, Algorithm.ADMM):
            return Family.L1
        return Family.LOG

    @classmethod
    def parse(cls, name: str) -> "Algorithm":
        key = name.strip().lower().replace("_", "-")
        for alg in cls:
            if alg.value == key:
                return alg
        raise ConfigError(f"unknown algorithm {name!r}; choose from {', '.join(a.value for a in cls)}")


class StopKind(str, enum.Enum):
    RELATIVE_STEP = "relative-step"
    OBJECTIVE_CHANGE = "objective-change"
    ITER_CAP_ONLY = "iter-cap"


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    a_matrix: DenseMatrix
    y: Vector
    x_true: Vector | None = None
    true_support: tuple[int, ...] | None = None
    seed: int = 0
    noise_std: float = 0.0

    def __post_init__(self):
        a = as_dense(self.a_matrix)
        m, n = a.shape
        y = as_vector(self.y, m, "y")
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")
        object.__setattr__(self, "a_matrix", _frozen(a))
        object.__setattr__(self, "y", _frozen(y))
        if self.x_true is None:
            if self.true_support is not None:
                raise ConfigError("true_support given without x_true")
            return
        x = as_vector(self.x_true, n, "x_true")
        support = tuple(int(i) for i in np.flatnonzero(np.abs(x) > 0))
        if self.true_support is not None and tuple(sorted(self.true_support)) != support:
            raise ConfigError("true_support does not match the nonzeros of x_true")
        object.__setattr__(self, "x_true", _frozen(x))
        object.__setattr__(self, "true_support", support)

    @property
    def m(self) -> int:
        return self.a_matrix.shape[0]

    @property
    def n(self) -> int:
        return self.a_matrix.shape[1]

    @property
    def has_truth(self) -> bool:
        return self.x_true is not None


@dataclass(frozen=True, eq=False)
class RegularizerConfig:
    """Penalty family, weights alpha and (log only) epsilon.

    ``tau`` is optional at construction; once present, lambda = tau * alpha
    is derived and, for the log family, lambda_i < epsilon^2 is enforced.
    Use ``bind`` to attach a stepsize to an unbound config.
    """

    family: Family
    alpha: float | Vector
    epsilon: float | None = None
    tau: float | None = None

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        alpha = np.asarray(self.alpha, dtype=np.float64)
        if alpha.ndim > 1:
            raise ConfigError("alpha must be a scalar or a 1-D vector")
        if np.any(alpha < 0) or not np.all(np.isfinite(alpha)):
            raise ConfigError("alpha must be finite with alpha_i >= 0")
        object.__setattr__(self, "alpha", float(alpha) if alpha.ndim == 0 else _frozen(alpha))
        if family is Family.LOG:
            if self.epsilon is None or not self.epsilon > 0:
                raise ConfigError("log regularization needs epsilon > 0")
        if self.tau is not None:
            if not self.tau > 0:
                raise ConfigError(f"tau must be positive, got {self.tau}")
            if family is Family.LOG:
                check_assumption(self.tau * np.asarray(self.alpha), self.epsilon)

    @classmethod
    def l1(cls, alpha, tau: float | None = None) -> "RegularizerConfig":
        return cls(Family.L1, alpha, None, tau)

    @classmethod
    def log(cls, alpha, epsilon: float, tau: float | None = None) -> "RegularizerConfig":
        return cls(Family.LOG, alpha, epsilon, tau)

    def bind(self, tau: float) -> "RegularizerConfig":
        return replace(self, tau=tau)

    def alpha_vector(self, n: int) -> Vector:
        alpha = np.asarray(self.alpha, dtype=np.float64)
        if alpha.ndim == 0:
            return np.full(n, float(alpha))
        if alpha.shape[0] != n:
            raise DimensionMismatchError(f"alpha has length {alpha.shape[0]}, problem has n={n}")
        return alpha

    def lam(self, n: int) -> Vector:
        """lambda = tau * alpha as a length-n vector."""
        if self.tau is None:
            raise ConfigError("regularizer is not bound to a stepsize")
        return self.tau * self.alpha_vector(n)


@dataclass(frozen=True)
class StoppingRule:
    kind: StopKind = StopKind.RELATIVE_STEP
    tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "kind", StopKind(self.kind))
        if not self.tol >= 0:
            raise ConfigError(f"tol must be >= 0, got {self.tol}")

    def fired(self, x_prev: Vector, x_next: Vector, f_prev: float, f_next: float) -> bool:
        if self.kind is StopKind.RELATIVE_STEP:
            step = float(np.linalg.norm(x_next - x_prev))
            return step / max(float(np.linalg.norm(x_prev)), 1.0) < self.tol
        if self.kind is StopKind.OBJECTIVE_CHANGE:
            return abs(f_next - f_prev) / max(abs(f_prev), 1.0) < self.tol
        return False


@dataclass(frozen=True)
class SolverConfig:
    algorithm: Algorithm
    tau: float
    max_iters: int = 5000
    stop: StoppingRule = field(default_factory=StoppingRule)
    rho: float = 1.0
    zero_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ConfigError(f"tau must be positive and finite, got {self.tau}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ConfigError(f"max_iters must be a positive integer, got {self.max_iters}")
        if not self.rho > 0:
            raise ConfigError(f"rho must be positive, got {self.rho}")
        if not self.zero_tol >= 0:
            raise ConfigError(f"zero_tol must be >= 0, got {self.zero_tol}")

    @classmethod
    def recommended(cls, instance: ProblemInstance, algorithm: Algorithm | str, **kwargs) -> "SolverConfig":
        """Config with tau = ||A||_2^-2 (equality, as in the benchmark)."""
        return cls(algorithm=Algorithm(algorithm), tau=recommended_tau(instance), **kwargs)


def generate_instance(
    m: int,
    n: int,
    k: int,
    noise_std: float = 0.0,
    magnitude_range: tuple[float, float] = DEFAULT_MAGNITUDES,
    seed: int = 0,
) -> ProblemInstance:
    """Gaussian sensing matrix with N(0, 1/m) entries and a k-sparse truth.

    Nonzeros sit at uniformly chosen indices with magnitudes uniform in
    ``magnitude_range`` and random signs; y = A x_true + N(0, noise_std^2).
    """
    if m < 1 or n < 1:
        raise ConfigError(f"dimensions must be positive, got m={m}, n={n}")
    if k < 0 or k > n:
        raise ConfigError(f"need 0 <= k <= n, got k={k}, n={n}")
    if noise_std < 0:
        raise ConfigError(f"noise_std must be >= 0, got {noise_std}")
    lo, hi = magnitude_range
    if not 0 < lo <= hi:
        raise ConfigError(f"magnitude range must satisfy 0 < low <= high, got {magnitude_range}")
    if seed < 0:
        raise ConfigError(f"seed must be unsigned, got {seed}")

    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0 / math.sqrt(m), size=(m, n))
    support = np.sort(rng.choice(n, size=k, replace=False))
    x = np.zeros(n)
    x[support] = rng.uniform(lo, hi, size=k) * rng.choice([-1.0, 1.0], size=k)
    y = a @ x
    if noise_std > 0:
        y = y + rng.normal(0.0, noise_std, size=m)
    logger.debug("generated instance m=%d n=%d k=%d noise_std=%g seed=%d", m, n, k, noise_std, seed)
    return ProblemInstance(a_matrix=a, y=y, x_true=x, seed=seed, noise_std=noise_std)


def recommended_tau(instance: ProblemInstance) -> float:
    """1 / ||A||_2^2."""
    sigma = spectral_norm(instance.a_matrix)
    return 1.0 / (sigma * sigma)
