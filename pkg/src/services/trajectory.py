"""Trajectory exports for plotting.

A trace is written either as CSV (one header row, then one row per
iteration t = 0..iters) or as JSON (the same records plus the labelled
milestone iterations and, when available, the ground-truth reference
point). Floats are written with ``repr`` so a parse recovers them exactly.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..errors import ConfigError
from ..problem import ProblemInstance
from ..solvers.driver import SolveResult, TraceRecord, numerical_l0
from ..solvers.objectives import residual

TRACE_COLUMNS = ("t", "residual", "l1", "l0", "objective", "step_norm")
ADMM_COLUMNS = ("primal_residual", "dual_residual")
MILESTONES = (1, 10, 20, 50, 200, 500)
_INT_COLUMNS = {"t", "l0"}


def columns_for(trace: Sequence[TraceRecord]) -> tuple[str, ...]:
    if any(r.primal_residual is not None for r in trace):
        return TRACE_COLUMNS + ADMM_COLUMNS
    return TRACE_COLUMNS


def milestones(trace: Sequence[TraceRecord], marks: Iterable[int] = MILESTONES) -> list[TraceRecord]:
    """Records at the labelled iterations that the trace reaches."""
    by_t = {r.t: r for r in trace}
    return [by_t[t] for t in marks if t in by_t]


def overshoot_ratio(result: SolveResult) -> float:
    """max_t ||x_t||_1 / final ||x||_1 along the trace."""
    peak = max(r.l1 for r in result.trace)
    final = result.final.l1
    if final > 0:
        return peak / final
    return math.inf if peak > 0 else 1.0


def reference_point(instance: ProblemInstance, zero_tol: float = 1e-8) -> dict | None:
    """Residual, l1 and l0 of the ground truth, or None without one."""
    if not instance.has_truth:
        return None
    x = instance.x_true
    return {
        "residual": float(np.linalg.norm(residual(x, instance))),
        "l1": float(np.abs(x).sum()),
        "l0": numerical_l0(x, zero_tol),
    }


def _cell(value) -> str:
    if value is None:
        return ""
    return repr(float(value)) if isinstance(value, float) else str(value)


def trajectory_export(
    result: SolveResult,
    path: str | Path,
    format: str = "csv",
    instance: ProblemInstance | None = None,
) -> Path:
    """Write the trace of ``result`` to ``path`` as ``csv`` or ``json``."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    columns = columns_for(result.trace)
    if format == "csv":
        with p.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for rec in result.trace:
                writer.writerow([_cell(getattr(rec, c)) for c in columns])
    elif format == "json":
        doc = {
            "algorithm": result.algorithm.label,
            "iters": result.iters,
            "converged": result.converged,
            "columns": list(columns),
            "trace": [r.as_dict() for r in result.trace],
            "milestones": [r.as_dict() for r in milestones(result.trace)],
            "reference": reference_point(instance) if instance is not None else None,
        }
        p.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    else:
        raise ConfigError(f"unknown trace format {format!r}; use 'csv' or 'json'")
    return p


def load_trace_csv(path: str | Path) -> list[dict]:
    """Parse a CSV written by ``trajectory_export``."""
    rows = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for raw in csv.DictReader(fh):
            row = {}
            for key, text in raw.items():
                if text == "":
                    row[key] = None
                elif key in _INT_COLUMNS:
                    row[key] = int(text)
                else:
                    row[key] = float(text)
            rows.append(row)
    return rows
