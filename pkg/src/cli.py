"""Command-line entry point.

    python -m src.cli generate --m 500 --n 1000 --k 10 --noise-std 0.1 --seed 1 --out inst.json
    python -m src.cli solve --algorithm ad-ista --instance inst.json --alpha 4e-4 --epsilon 1e-2 --out out/
    python -m src.cli bench --paper-defaults --runs 100 --seed 1 --out out/

Exit codes: 0 success, 1 invalid input or configuration, 2 runtime abort.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .config import (
    BENCH_DEFAULTS,
    DEFAULT_ALPHA,
    GENERATE_DEFAULTS,
    PAPER_DEFAULTS,
    SOLVE_DEFAULTS,
    load_config,
    merge,
    resolve_threads,
    write_effective_config,
)
from .db import init_db, results_db
from .errors import ConfigError, InstanceFormatError, SparseBenchError
from .problem import (
    Algorithm,
    Family,
    RegularizerConfig,
    SolverConfig,
    StopKind,
    StoppingRule,
    generate_instance,
    recommended_tau,
)
from .services.benchmark import BenchmarkSpec, run_benchmark, support_recovery
from .services.report import format_table, report_to_json, write_rows_csv
from .services.store import record_batch
from .services.trajectory import reference_point, trajectory_export
from .solvers import run
from .utils.instance_io import load_instance, save_instance

logger = logging.getLogger(__name__)

ALGORITHM_CHOICES = [a.value for a in Algorithm]
STOP_CHOICES = [k.value for k in StopKind]
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsebench", description="Adaptive shrinkage-thresholding solvers and benchmarks.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("generate", help="write a random problem instance")
    gen.add_argument("--m", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--noise-std", dest="noise_std", type=float)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--magnitude-low", dest="magnitude_low", type=float)
    gen.add_argument("--magnitude-high", dest="magnitude_high", type=float)
    gen.add_argument("--out")
    gen.add_argument("--config")

    solve = sub.add_parser("solve", help="run one algorithm on an instance file")
    solve.add_argument("--algorithm", choices=ALGORITHM_CHOICES)
    solve.add_argument("--instance")
    solve.add_argument("--alpha", type=float)
    solve.add_argument("--epsilon", type=float)
    solve.add_argument("--rho", type=float)
    solve.add_argument("--tau", type=float)
    solve.add_argument("--tol", type=float)
    solve.add_argument("--stop", choices=STOP_CHOICES)
    solve.add_argument("--max-iters", dest="max_iters", type=int)
    solve.add_argument("--out")
    solve.add_argument("--config")

    bench = sub.add_parser("bench", help="run a randomized benchmark batch")
    bench.add_argument("--paper-defaults", dest="paper_defaults", action="store_true")
    bench.add_argument("--runs", type=int)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--algorithms", help="comma-separated, e.g. ista,ad-ista")
    bench.add_argument("--m", type=int)
    bench.add_argument("--n", type=int)
    bench.add_argument("--k", type=int)
    bench.add_argument("--noise-std", dest="noise_std", type=float)
    bench.add_argument("--alpha-l1", dest="alpha_l1", type=float)
    bench.add_argument("--alpha-log", dest="alpha_log", type=float)
    bench.add_argument("--epsilon", type=float)
    bench.add_argument("--rho", type=float)
    bench.add_argument("--tol", type=float)
    bench.add_argument("--stop", choices=STOP_CHOICES)
    bench.add_argument("--max-iters", dest="max_iters", type=int)
    bench.add_argument("--threads", type=int)
    bench.add_argument("--out")
    bench.add_argument("--config")
    return parser


def _flags(args: argparse.Namespace, keys) -> dict:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _effective(args: argparse.Namespace, defaults: dict, preset: dict | None = None) -> dict:
    allowed = set(defaults)
    from_file = load_config(args.config, allowed) if args.config else None
    return merge(defaults, preset, from_file, _flags(args, allowed))


def _stop_rule(kind: str, tol: float) -> StoppingRule:
    try:
        return StoppingRule(StopKind(kind), float(tol))
    except ValueError as exc:
        raise ConfigError(f"invalid stopping rule {kind!r}: {exc}") from exc


def _parse_algorithms(text: str) -> tuple[Algorithm, ...]:
    return tuple(Algorithm.parse(name) for name in text.split(",") if name.strip())


def cmd_generate(args: argparse.Namespace) -> int:
    eff = _effective(args, GENERATE_DEFAULTS)
    instance = generate_instance(
        int(eff["m"]),
        int(eff["n"]),
        int(eff["k"]),
        float(eff["noise_std"]),
        (float(eff["magnitude_low"]), float(eff["magnitude_high"])),
        int(eff["seed"]),
    )
    path = save_instance(instance, eff["out"])
    write_effective_config(path.with_name(path.name + ".config.json"), "generate", eff)
    logger.info("wrote instance %s (m=%d, n=%d, k=%d)", path, instance.m, instance.n, len(instance.true_support))
    print(path)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    eff = _effective(args, SOLVE_DEFAULTS)
    if eff.get("algorithm") is None:
        raise ConfigError("solve: --algorithm is required")
    if eff.get("instance") is None:
        raise ConfigError("solve: --instance is required")
    algorithm = Algorithm.parse(eff["algorithm"])
    try:
        instance = load_instance(eff["instance"])
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance {eff['instance']}: {exc.strerror or exc}") from exc

    tau = float(eff["tau"]) if eff.get("tau") is not None else recommended_tau(instance)
    alpha = float(eff["alpha"]) if eff.get("alpha") is not None else DEFAULT_ALPHA[algorithm.family.value]
    if algorithm.family is Family.L1:
        reg = RegularizerConfig.l1(alpha, tau)
    else:
        reg = RegularizerConfig.log(alpha, float(eff["epsilon"]), tau)
    config = SolverConfig(
        algorithm=algorithm,
        tau=tau,
        max_iters=int(eff["max_iters"]),
        stop=_stop_rule(eff["stop"], eff["tol"]),
        rho=float(eff["rho"]),
    )
    eff.update(algorithm=algorithm.value, tau=tau, alpha=alpha)

    result = run(instance, reg, config)

    out = Path(eff["out"])
    out.mkdir(parents=True, exist_ok=True)
    summary = {
        "algorithm": algorithm.label,
        "iters": result.iters,
        "converged": result.converged,
        "tau": tau,
        "final": result.final.as_dict(),
        "x_final": [float(v) for v in result.x_final],
        "support": [int(i) for i in np.flatnonzero(np.abs(result.x_final) > config.zero_tol)],
    }
    if instance.has_truth:
        summary["support_recovered"] = support_recovery(result, instance, config.zero_tol)
        summary["reference"] = reference_point(instance, config.zero_tol)
    (out / "result.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    trajectory_export(result, out / "trace.csv", "csv")
    write_effective_config(out / "config.json", "solve", eff)
    print(f"{algorithm.label}: iters={result.iters} converged={result.converged} residual={result.final.residual:.6g} l0={result.final.l0}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    eff = _effective(args, BENCH_DEFAULTS, PAPER_DEFAULTS if args.paper_defaults else None)
    spec = BenchmarkSpec(
        m=int(eff["m"]),
        n=int(eff["n"]),
        k=int(eff["k"]),
        noise_std=float(eff["noise_std"]),
        runs=int(eff["runs"]),
        algorithms=_parse_algorithms(str(eff["algorithms"])),
        alpha_l1=float(eff["alpha_l1"]),
        alpha_log=float(eff["alpha_log"]),
        epsilon=float(eff["epsilon"]),
        base_seed=int(eff["seed"]),
        stop=_stop_rule(eff["stop"], eff["tol"]),
        max_iters=int(eff["max_iters"]),
        rho=float(eff["rho"]),
    )
    threads = resolve_threads(eff.get("threads"))
    eff.update(threads=threads, paper_defaults=bool(args.paper_defaults))

    report = run_benchmark(spec, threads=threads, trace_runs=(0,))

    out = Path(eff["out"])
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report_to_json(report), encoding="utf-8")
    table = format_table(report)
    (out / "report.txt").write_text(table, encoding="utf-8")
    write_rows_csv(report.rows, out / "rows.csv")
    for (run_index, alg), result in sorted(report.traces.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        trajectory_export(result, out / f"trace_run{run_index}_{alg.value}.csv", "csv")
    engine, Session = init_db(results_db(out))
    try:
        with Session() as s:
            batch = record_batch(s, report)
            logger.info("stored batch %d in %s", batch.id, out / "results.db")
    finally:
        engine.dispose()
    write_effective_config(out / "config.json", "bench", eff)
    print(table, end="")
    return 0


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "bench": cmd_bench}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)
        return COMMANDS[args.subcommand](args)
    except (ConfigError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SparseBenchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
