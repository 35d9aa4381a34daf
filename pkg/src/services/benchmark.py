"""Randomized benchmark batches.

Run ``i`` draws its instance from seed ``base_seed + i`` and executes every
requested algorithm on that same instance, all from x_0 = 0 with
tau = ||A||_2^-2. The L1 algorithms (ISTA, FISTA, ADMM) use ``alpha_l1``;
the log-penalty ones (AD-ISTA, AD-FISTA, RW-ISTA) use ``alpha_log`` and
``epsilon``. A run that aborts is recorded as an error row with
iters = max_iters instead of stopping the batch; configuration errors are
still raised.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from ..problem import (
    Algorithm,
    Family,
    ProblemInstance,
    RegularizerConfig,
    SolverConfig,
    StoppingRule,
    generate_instance,
    recommended_tau,
)
from ..solvers.driver import SolveResult, run
from .report import BenchmarkReport, RunRow, build_report, failed_row, row_from_result
from .trajectory import overshoot_ratio

logger = logging.getLogger(__name__)

ALL_ALGORITHMS = (
    Algorithm.ISTA,
    Algorithm.FISTA,
    Algorithm.ADMM,
    Algorithm.RW_ISTA,
    Algorithm.AD_ISTA,
    Algorithm.AD_FISTA,
)


@dataclass(frozen=True)
class BenchmarkSpec:
    m: int = 500
    n: int = 1000
    k: int = 10
    noise_std: float = 0.1
    runs: int = 100
    algorithms: tuple[Algorithm, ...] = ALL_ALGORITHMS
    alpha_l1: float = 1e-3
    alpha_log: float = 4e-4
    epsilon: float = 1e-2
    base_seed: int = 0
    stop: StoppingRule = field(default_factory=StoppingRule)
    max_iters: int = 5000
    rho: float = 1.0
    magnitude_range: tuple[float, float] = (1.0, 2.0)
    zero_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "algorithms", tuple(Algorithm(a) for a in self.algorithms))
        object.__setattr__(self, "magnitude_range", tuple(float(v) for v in self.magnitude_range))
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("algorithms must not repeat")
        if self.m < 1 or self.n < 1 or not 0 <= self.k <= self.n:
            raise ConfigError(f"need m, n >= 1 and 0 <= k <= n, got m={self.m}, n={self.n}, k={self.k}")
        if self.base_seed < 0:
            raise ConfigError(f"base_seed must be unsigned, got {self.base_seed}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.alpha_l1 < 0 or self.alpha_log < 0 or not self.epsilon > 0:
            raise ConfigError("alpha_l1 and alpha_log must be >= 0 and epsilon > 0")

    def seed(self, run_index: int) -> int:
        return self.base_seed + run_index

    def regularizer(self, algorithm: Algorithm) -> RegularizerConfig:
        if algorithm.family is Family.L1:
            return RegularizerConfig.l1(self.alpha_l1)
        return RegularizerConfig.log(self.alpha_log, self.epsilon)

    def solver_config(self, algorithm: Algorithm, tau: float) -> SolverConfig:
        return SolverConfig(
            algorithm=algorithm, tau=tau, max_iters=self.max_iters, stop=self.stop, rho=self.rho, zero_tol=self.zero_tol
        )

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "noise_std": self.noise_std,
            "runs": self.runs,
            "algorithms": [a.value for a in self.algorithms],
            "alpha_l1": self.alpha_l1,
            "alpha_log": self.alpha_log,
            "epsilon": self.epsilon,
            "base_seed": self.base_seed,
            "stop": self.stop.kind.value,
            "tol": self.stop.tol,
            "max_iters": self.max_iters,
            "rho": self.rho,
            "magnitude_range": list(self.magnitude_range),
            "zero_tol": self.zero_tol,
        }


def support_recovery(result: SolveResult, instance: ProblemInstance, zero_tol: float = 1e-8) -> bool:
    """True iff the numerical support of x_final equals the true support."""
    if not instance.has_truth:
        raise ConfigError("support recovery needs an instance with ground truth")
    found = tuple(int(i) for i in np.flatnonzero(np.abs(result.x_final) > zero_tol))
    return found == instance.true_support


def check_spec(spec: BenchmarkSpec, instance: ProblemInstance, tau: float) -> None:
    """Raise ``ConfigError`` when a requested algorithm cannot run at ``tau``."""
    for alg in spec.algorithms:
        spec.regularizer(alg).bind(tau)


def _run_index(spec: BenchmarkSpec, run_index: int, keep_traces: bool) -> tuple[list[RunRow], dict]:
    seed = spec.seed(run_index)
    rows, traces = [], {}
    try:
        instance = generate_instance(spec.m, spec.n, spec.k, spec.noise_std, spec.magnitude_range, seed)
        tau = recommended_tau(instance)
        check_spec(spec, instance, tau)
    except ConfigError:
        raise
    except Exception as exc:
        logger.warning("run %d (seed %d): instance setup failed: %s", run_index, seed, exc)
        return [failed_row(run_index, seed, alg, spec.max_iters, exc) for alg in spec.algorithms], traces

    for alg in spec.algorithms:
        try:
            result = run(instance, spec.regularizer(alg), spec.solver_config(alg, tau))
        except ConfigError:
            raise
        except Exception as exc:
            logger.warning("run %d (seed %d): %s aborted: %s", run_index, seed, alg.label, exc)
            rows.append(failed_row(run_index, seed, alg, spec.max_iters, exc))
            continue
        recovered = support_recovery(result, instance, spec.zero_tol)
        rows.append(row_from_result(run_index, seed, result, recovered, overshoot_ratio(result)))
        if keep_traces:
            traces[(run_index, alg)] = result
    logger.info("run %d (seed %d) done: %s", run_index, seed, ", ".join(f"{r.algorithm}={r.iters}" for r in rows))
    return rows, traces


def run_benchmark(spec: BenchmarkSpec, threads: int = 1, trace_runs: tuple[int, ...] = ()) -> BenchmarkReport:
    """Execute ``spec.runs`` randomized runs and aggregate them.

    Runs are independent and may be spread over ``threads`` workers; the
    report does not depend on execution order. Full results for run indices
    in ``trace_runs`` are kept in ``report.traces`` keyed by
    (run_index, algorithm).
    """
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    wanted = set(trace_runs)
    indices = range(spec.runs)
    logger.info("benchmark: %d runs x %d algorithms on %d threads", spec.runs, len(spec.algorithms), threads)
    if threads == 1:
        outcomes = [_run_index(spec, i, i in wanted) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda i: _run_index(spec, i, i in wanted), indices))

    rows, traces = [], {}
    for run_rows, run_traces in outcomes:
        rows.extend(run_rows)
        traces.update(run_traces)
    return build_report(spec.as_dict(), rows, spec.algorithms, traces)
