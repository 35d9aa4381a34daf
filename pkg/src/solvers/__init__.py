"""Iterative solvers for Lasso and Log-Lasso."""

from .admm import step_admm
from .base import BaseSolver, IterateState
from .driver import SOLVERS, SolveResult, TraceRecord, get_solver, numerical_l0, run
from .fista import step_ad_fista, step_fista
from .ista import step_ad_ista, step_ista
from .objectives import objective, objective_lasso, objective_loglasso, surrogate
from .rw_ista import step_rw_ista

__all__ = [
    "BaseSolver",
    "IterateState",
    "SOLVERS",
    "SolveResult",
    "TraceRecord",
    "get_solver",
    "numerical_l0",
    "objective",
    "objective_lasso",
    "objective_loglasso",
    "run",
    "step_ad_fista",
    "step_ad_ista",
    "step_admm",
    "step_fista",
    "step_ista",
    "step_rw_ista",
    "surrogate",
]
