"""Benchmark rows and their per-algorithm aggregation.

Every aggregate is a plain function of the per-run rows, so re-reading the
rows CSV (or the results database) reproduces the summaries exactly.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence

from ..problem import Algorithm
from ..solvers.driver import SolveResult

ADAPTIVE = (Algorithm.AD_ISTA, Algorithm.AD_FISTA)
CLASSICAL = (Algorithm.ISTA, Algorithm.FISTA, Algorithm.ADMM)


@dataclass(frozen=True)
class RunRow:
    run_index: int
    seed: int
    algorithm: str
    status: str
    iters: int
    converged: bool
    support_recovered: bool | None = None
    final_residual: float | None = None
    final_l1: float | None = None
    final_l0: int | None = None
    max_l1: float | None = None
    overshoot: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


ROW_COLUMNS = tuple(f.name for f in fields(RunRow))


@dataclass(frozen=True)
class AlgorithmSummary:
    algorithm: str
    runs: int
    mean: float
    min: int
    max: int
    median: float
    recovery_rate: float
    converged_rate: float
    failures: int
    mean_final_residual: float | None
    mean_final_l1: float | None
    mean_overshoot: float | None


@dataclass(frozen=True)
class BenchmarkReport:
    spec: dict
    summaries: tuple[AlgorithmSummary, ...]
    rows: tuple[RunRow, ...]
    traces: dict = field(default_factory=dict, compare=False, repr=False)

    def summary(self, algorithm: Algorithm | str) -> AlgorithmSummary:
        label = algorithm.label if isinstance(algorithm, Algorithm) else algorithm
        for s in self.summaries:
            if s.algorithm == label:
                return s
        raise KeyError(label)

    @property
    def ordering(self) -> list[str]:
        """Algorithms from fewest to most mean iterations."""
        return [s.algorithm for s in sorted(self.summaries, key=lambda s: (s.mean, s.algorithm))]

    @property
    def adaptive_separated(self) -> bool | None:
        """Whether every adaptive max count is below every classical min count."""
        present = {s.algorithm: s for s in self.summaries}
        fast = [present[a.label] for a in ADAPTIVE if a.label in present]
        slow = [present[a.label] for a in CLASSICAL if a.label in present]
        if not fast or not slow:
            return None
        return max(s.max for s in fast) < min(s.min for s in slow)


def row_from_result(run_index: int, seed: int, result: SolveResult, recovered: bool | None, overshoot: float) -> RunRow:
    final = result.final
    return RunRow(
        run_index=run_index,
        seed=seed,
        algorithm=result.algorithm.label,
        status="ok",
        iters=result.iters,
        converged=result.converged,
        support_recovered=recovered,
        final_residual=final.residual,
        final_l1=final.l1,
        final_l0=final.l0,
        max_l1=max(r.l1 for r in result.trace),
        overshoot=overshoot,
    )


def failed_row(run_index: int, seed: int, algorithm: Algorithm, max_iters: int, exc: BaseException) -> RunRow:
    return RunRow(
        run_index=run_index,
        seed=seed,
        algorithm=algorithm.label,
        status="error",
        iters=max_iters,
        converged=False,
        error=f"{type(exc).__name__}: {exc}",
    )


def _mean(values: list[float]) -> float | None:
    finite = [v for v in values if v is not None and math.isfinite(v)]
    return sum(finite) / len(finite) if finite else None


def summarize(rows: Iterable[RunRow], algorithms: Sequence[Algorithm]) -> tuple[AlgorithmSummary, ...]:
    rows = list(rows)
    out = []
    for alg in algorithms:
        mine = [r for r in rows if r.algorithm == alg.label]
        if not mine:
            continue
        iters = [r.iters for r in mine]
        ok = [r for r in mine if r.ok]
        out.append(
            AlgorithmSummary(
                algorithm=alg.label,
                runs=len(mine),
                mean=sum(iters) / len(iters),
                min=min(iters),
                max=max(iters),
                median=float(statistics.median(iters)),
                recovery_rate=sum(1 for r in mine if r.support_recovered) / len(mine),
                converged_rate=sum(1 for r in mine if r.converged) / len(mine),
                failures=len(mine) - len(ok),
                mean_final_residual=_mean([r.final_residual for r in ok]),
                mean_final_l1=_mean([r.final_l1 for r in ok]),
                mean_overshoot=_mean([r.overshoot for r in ok]),
            )
        )
    return tuple(out)


def build_report(spec: dict, rows: Iterable[RunRow], algorithms: Sequence[Algorithm], traces: dict | None = None) -> BenchmarkReport:
    order = {alg.label: i for i, alg in enumerate(algorithms)}
    rows = tuple(sorted(rows, key=lambda r: (r.run_index, order.get(r.algorithm, len(order)))))
    return BenchmarkReport(spec=spec, summaries=summarize(rows, algorithms), rows=rows, traces=traces or {})


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def report_to_dict(report: BenchmarkReport) -> dict:
    return _json_safe(
        {
            "spec": report.spec,
            "summary": [asdict(s) for s in report.summaries],
            "ordering": report.ordering,
            "adaptive_separated": report.adaptive_separated,
            "rows": [asdict(r) for r in report.rows],
        }
    )


def report_to_json(report: BenchmarkReport) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, no timestamps."""
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def format_table(report: BenchmarkReport) -> str:
    """Aligned text table: Algorithm, Mean, Min, Max, Median, Recovery."""
    header = ("Algorithm", "Mean", "Min", "Max", "Median", "Recovery")
    body = [
        (s.algorithm, f"{s.mean:.2f}", str(s.min), str(s.max), f"{s.median:.1f}", f"{s.recovery_rate:.2f}")
        for s in report.summaries
    ]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]

    def line(row):
        return "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))

    rule = "-" * len(line(header))
    return "\n".join([line(header), rule, *(line(r) for r in body)]) + "\n"


def write_rows_csv(rows: Iterable[RunRow], path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ROW_COLUMNS)
        for row in rows:
            values = asdict(row)
            writer.writerow(["" if values[c] is None else (repr(values[c]) if isinstance(values[c], float) else values[c]) for c in ROW_COLUMNS])
    return p


def read_rows_csv(path: str | Path) -> list[RunRow]:
    """Parse a rows CSV back into ``RunRow`` objects."""
    ints = {"run_index", "seed", "iters", "final_l0"}
    floats = {"final_residual", "final_l1", "max_l1", "overshoot"}
    bools = {"converged", "support_recovered"}
    out = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for raw in csv.DictReader(fh):
            kw = {}
            for key, text in raw.items():
                if text == "":
                    kw[key] = None
                elif key in ints:
                    kw[key] = int(text)
                elif key in floats:
                    kw[key] = float(text)
                elif key in bools:
                    kw[key] = text == "True"
                else:
                    kw[key] = text
            out.append(RunRow(**kw))
    return out
