"""Generic iteration driver.

``run`` starts every algorithm from x_0 = 0 (unless told otherwise), steps
it until the stopping rule fires or ``max_iters`` is reached, and records
one ``TraceRecord`` per iteration including t = 0. Non-finite iterates abort
the run with ``SolverDivergedError``.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import ConfigError, SolverDivergedError
from ..linalg import Vector, as_vector
from ..problem import Algorithm, ProblemInstance, RegularizerConfig, SolverConfig
from .admm import AdmmSolver
from .base import BaseSolver, IterateState
from .fista import AdFistaSolver, FistaSolver
from .ista import AdIstaSolver, IstaSolver
from .objectives import objective, residual
from .rw_ista import RwIstaSolver

logger = logging.getLogger(__name__)

SOLVERS: dict[Algorithm, BaseSolver] = {
    s.algorithm: s
    for s in (IstaSolver(), FistaSolver(), AdIstaSolver(), AdFistaSolver(), RwIstaSolver(), AdmmSolver())
}

DEFAULT_ZERO_TOL = 1e-8


def get_solver(algorithm: Algorithm | str) -> BaseSolver:
    alg = Algorithm.parse(algorithm) if isinstance(algorithm, str) else algorithm
    return SOLVERS[alg]


@dataclass(frozen=True)
class TraceRecord:
    t: int
    residual: float
    l1: float
    l0: int
    objective: float
    step_norm: float
    primal_residual: float | None = None
    dual_residual: float | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        if self.primal_residual is None and self.dual_residual is None:
            d.pop("primal_residual")
            d.pop("dual_residual")
        return d


@dataclass(frozen=True, eq=False)
class SolveResult:
    algorithm: Algorithm
    x_final: Vector
    iters: int
    converged: bool
    trace: tuple[TraceRecord, ...]

    @property
    def final(self) -> TraceRecord:
        return self.trace[-1]


def numerical_l0(x: Vector, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """Number of components with |x_i| > zero_tol."""
    if not zero_tol >= 0:
        raise ConfigError(f"zero_tol must be >= 0, got {zero_tol}")
    return int(np.count_nonzero(np.abs(np.asarray(x)) > zero_tol))


def _record(
    t: int, x: Vector, instance: ProblemInstance, reg: RegularizerConfig, step_norm: float, zero_tol: float, extra: dict
) -> TraceRecord:
    r = residual(x, instance)
    return TraceRecord(
        t=t,
        residual=float(np.linalg.norm(r)),
        l1=float(np.abs(x).sum()),
        l0=numerical_l0(x, zero_tol),
        objective=objective(x, instance, reg, r),
        step_norm=step_norm,
        **extra,
    )


def _finite(state: IterateState) -> bool:
    return all(np.all(np.isfinite(a)) for a in (state.x, *state.auxiliaries()))


def run(
    instance: ProblemInstance,
    reg: RegularizerConfig,
    config: SolverConfig,
    x0: Vector | None = None,
    log_every: int = 100,
) -> SolveResult:
    """Iterate ``config.algorithm`` on ``instance`` and return the result."""
    solver = get_solver(config.algorithm)
    if reg.family is not solver.family:
        raise ConfigError(f"{solver.name} needs {solver.family.value} regularization, got {reg.family.value}")
    reg = reg.bind(config.tau)
    reg.lam(instance.n)
    x0 = np.zeros(instance.n) if x0 is None else as_vector(x0, instance.n, "x0")

    state = solver.init_state(instance, reg, config, x0)
    x = state.estimate
    rec = _record(0, x, instance, reg, 0.0, config.zero_tol, {})
    trace = [rec]
    converged = False
    for t in range(1, config.max_iters + 1):
        new = solver.step(state, instance, reg, config)
        if not _finite(new):
            raise SolverDivergedError(solver.name, t)
        x_new = new.estimate
        step_norm = float(np.linalg.norm(x_new - x))
        new_rec = _record(t, x_new, instance, reg, step_norm, config.zero_tol, solver.diagnostics(state, new, config))
        if not np.isfinite(new_rec.objective):
            raise SolverDivergedError(solver.name, t)
        trace.append(new_rec)
        fired = config.stop.fired(x, x_new, rec.objective, new_rec.objective)
        state, x, rec = new, x_new, new_rec
        if log_every and t % log_every == 0:
            logger.debug("%s t=%d residual=%.6g l1=%.6g l0=%d step=%.3g", solver.name, t, rec.residual, rec.l1, rec.l0, step_norm)
        if fired:
            converged = True
            break

    if converged:
        logger.info("%s converged in %d iterations (residual %.6g, l0 %d)", solver.name, state.t, rec.residual, rec.l0)
    else:
        logger.warning("%s stopped at the iteration cap %d without converging", solver.name, config.max_iters)
    return SolveResult(
        algorithm=config.algorithm,
        x_final=np.array(x),
        iters=state.t,
        converged=converged,
        trace=tuple(trace),
    )
