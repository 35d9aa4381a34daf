"""Persist benchmark reports and query them back.

``record_batch`` stores a report's spec and rows. ``iteration_stats`` and
``recovery_rates`` recompute the per-algorithm statistics with SQL
aggregates, independently of ``report.summarize``.
"""

from __future__ import annotations

import json

from sqlalchemy import case, func, select
from sqlalchemy.orm import Session

from ..models import Batch, RunRecord
from .report import BenchmarkReport, RunRow


def record_batch(session: Session, report: BenchmarkReport) -> Batch:
    """Insert one batch with all of its rows and return it."""
    spec = report.spec
    batch = Batch(
        base_seed=spec["base_seed"],
        runs=spec["runs"],
        m=spec["m"],
        n=spec["n"],
        k=spec["k"],
        noise_std=spec["noise_std"],
        spec_json=json.dumps(spec, sort_keys=True),
    )
    batch.records = [RunRecord(**_record_fields(row)) for row in report.rows]
    session.add(batch)
    session.commit()
    return batch


def _record_fields(row: RunRow) -> dict:
    return {
        "run_index": row.run_index,
        "seed": row.seed,
        "algorithm": row.algorithm,
        "status": row.status,
        "iters": row.iters,
        "converged": row.converged,
        "support_recovered": row.support_recovered,
        "final_residual": row.final_residual,
        "final_l1": row.final_l1,
        "final_l0": row.final_l0,
        "max_l1": row.max_l1,
        "overshoot": row.overshoot,
        "error": row.error,
    }


def iteration_stats(session: Session, batch_id: int) -> dict[str, dict]:
    """{algorithm: {"mean", "min", "max", "runs"}} of iteration counts."""
    q = (
        select(
            RunRecord.algorithm,
            func.avg(RunRecord.iters),
            func.min(RunRecord.iters),
            func.max(RunRecord.iters),
            func.count(RunRecord.id),
        )
        .where(RunRecord.batch_id == batch_id)
        .group_by(RunRecord.algorithm)
    )
    return {
        alg: {"mean": float(mean), "min": int(lo), "max": int(hi), "runs": int(count)}
        for alg, mean, lo, hi, count in session.execute(q).all()
    }


def recovery_rates(session: Session, batch_id: int) -> dict[str, float]:
    """Fraction of rows per algorithm whose support was recovered."""
    hit = case((RunRecord.support_recovered.is_(True), 1), else_=0)
    q = (
        select(RunRecord.algorithm, func.sum(hit), func.count(RunRecord.id))
        .where(RunRecord.batch_id == batch_id)
        .group_by(RunRecord.algorithm)
    )
    return {alg: int(hits) / int(count) for alg, hits, count in session.execute(q).all()}


def failed_records(session: Session, batch_id: int) -> list[RunRecord]:
    q = (
        select(RunRecord)
        .where(RunRecord.batch_id == batch_id, RunRecord.status != "ok")
        .order_by(RunRecord.run_index, RunRecord.algorithm)
    )
    return list(session.scalars(q).all())
