"""Configuration presets and the flat JSON config file.

Precedence for every key, lowest first: built-in defaults, the
``--paper-defaults`` preset (bench only), the ``--config`` file, explicit
command-line flags. Config files are flat JSON objects whose keys are the
flag names with dashes replaced by underscores.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import ConfigError

THREADS_ENV = "SPARSEBENCH_THREADS"

PAPER_DEFAULTS = {
    "m": 500,
    "n": 1000,
    "k": 10,
    "noise_std": 0.1,
    "runs": 100,
    "alpha_l1": 1e-3,
    "alpha_log": 4e-4,
    "epsilon": 1e-2,
    "stop": "relative-step",
    "tol": 1e-8,
    "max_iters": 5000,
}

GENERATE_DEFAULTS = {
    "m": 500,
    "n": 1000,
    "k": 10,
    "noise_std": 0.1,
    "seed": 0,
    "magnitude_low": 1.0,
    "magnitude_high": 2.0,
    "out": "instance.json",
}

SOLVE_DEFAULTS = {
    "algorithm": None,
    "instance": None,
    "alpha": None,
    "epsilon": 1e-2,
    "rho": 1.0,
    "tau": None,
    "stop": "relative-step",
    "tol": 1e-8,
    "max_iters": 5000,
    "out": "out",
}

# Desk-scale batch; --paper-defaults switches to the full experiment.
BENCH_DEFAULTS = {
    "m": 100,
    "n": 200,
    "k": 5,
    "noise_std": 0.0,
    "runs": 10,
    "seed": 0,
    "algorithms": "ista,fista,admm,rw-ista,ad-ista,ad-fista",
    "alpha_l1": 1e-3,
    "alpha_log": 4e-4,
    "epsilon": 1e-2,
    "rho": 1.0,
    "stop": "relative-step",
    "tol": 1e-8,
    "max_iters": 5000,
    "threads": None,
    "out": "out",
}

# alpha when --alpha is not given, per penalty family
DEFAULT_ALPHA = {"l1": 1e-3, "log": 4e-4}


def load_config(path: str | Path, allowed: set[str]) -> dict:
    """Read a flat JSON config, rejecting keys outside ``allowed``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must be a JSON object with flat keys")
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"config {path} has unknown keys: {', '.join(unknown)}")
    for key, value in doc.items():
        if isinstance(value, (dict, list)) and key != "algorithms":
            raise ConfigError(f"config key {key!r} must be a scalar (flat keys only)")
    if isinstance(doc.get("algorithms"), list):
        doc["algorithms"] = ",".join(str(a) for a in doc["algorithms"])
    return doc


def merge(*layers: dict | None) -> dict:
    """Later layers win; ``None`` values never override."""
    out: dict = {}
    for layer in layers:
        if not layer:
            continue
        out.update({k: v for k, v in layer.items() if v is not None})
    return out


def resolve_threads(value: int | None) -> int:
    """Explicit value, else ``SPARSEBENCH_THREADS``, else 1."""
    if value is None:
        raw = os.environ.get(THREADS_ENV)
        if raw is None or raw.strip() == "":
            return 1
        try:
            value = int(raw)
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if int(value) < 1:
        raise ConfigError(f"thread count must be >= 1, got {value}")
    return int(value)


def write_effective_config(path: str | Path, subcommand: str, effective: dict) -> Path:
    """Serialize the effective configuration for provenance."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    doc = {"subcommand": subcommand, **{k: effective[k] for k in sorted(effective)}}
    p.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return p
