"""Instance file helpers.

An instance file is a single UTF-8 JSON document::

    {
      "format": "sparsebench-instance",
      "version": 1,
      "header": {"m": 5, "n": 8, "seed": 3, "noise_std": 0.0, "has_truth": true},
      "encoding": {"dtype": "float64", "byte_order": "little",
                   "layout": "row-major", "codec": "base64"},
      "payload": {"a_matrix": "<base64>", "y": "<base64>", "x_true": "<base64>"}
    }

Each payload is the base64 encoding of the raw IEEE-754 little-endian
doubles of the array, ``a_matrix`` in row-major order (m*n values).
``x_true`` is present only when ``has_truth`` is true. Round trips are
bit-exact.
"""

from __future__ import annotations

import base64
import binascii
import json
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatchError, InstanceFormatError
from ..problem import ProblemInstance

FORMAT_NAME = "sparsebench-instance"
FORMAT_VERSION = 1
_ENCODING = {"dtype": "float64", "byte_order": "little", "layout": "row-major", "codec": "base64"}
_LE_DOUBLE = np.dtype("<f8")


def _encode(arr: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(arr, dtype=_LE_DOUBLE).tobytes()).decode("ascii")


def _decode(text, count: int, name: str) -> np.ndarray:
    if not isinstance(text, str):
        raise InstanceFormatError(f"payload {name!r} must be a base64 string")
    try:
        raw = base64.b64decode(text.encode("ascii"), validate=True)
    except (binascii.Error, UnicodeEncodeError) as exc:
        raise InstanceFormatError(f"payload {name!r} is not valid base64") from exc
    if len(raw) != count * _LE_DOUBLE.itemsize:
        raise DimensionMismatchError(
            f"payload {name!r} holds {len(raw) // _LE_DOUBLE.itemsize} values, header implies {count}"
        )
    return np.frombuffer(raw, dtype=_LE_DOUBLE).astype(np.float64)


def instance_to_dict(instance: ProblemInstance) -> dict:
    payload = {"a_matrix": _encode(instance.a_matrix), "y": _encode(instance.y)}
    if instance.has_truth:
        payload["x_true"] = _encode(instance.x_true)
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "header": {
            "m": instance.m,
            "n": instance.n,
            "seed": instance.seed,
            "noise_std": instance.noise_std,
            "has_truth": instance.has_truth,
        },
        "encoding": dict(_ENCODING),
        "payload": payload,
    }


def instance_from_dict(doc) -> ProblemInstance:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise InstanceFormatError("not a sparsebench instance document")
    if doc.get("version") != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported instance version {doc.get('version')!r}")
    if doc.get("encoding") != _ENCODING:
        raise InstanceFormatError(f"unsupported payload encoding {doc.get('encoding')!r}")
    try:
        header, payload = doc["header"], doc["payload"]
        m, n = int(header["m"]), int(header["n"])
        seed = int(header["seed"])
        noise_std = float(header["noise_std"])
        has_truth = bool(header["has_truth"])
        a_text, y_text = payload["a_matrix"], payload["y"]
        x_text = payload["x_true"] if has_truth else None
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"instance header or payload incomplete: {exc}") from exc
    if m < 1 or n < 1:
        raise InstanceFormatError(f"header dimensions must be positive, got m={m}, n={n}")

    a = _decode(a_text, m * n, "a_matrix").reshape(m, n)
    y = _decode(y_text, m, "y")
    x = _decode(x_text, n, "x_true") if has_truth else None
    return ProblemInstance(a_matrix=a, y=y, x_true=x, seed=seed, noise_std=noise_std)


def save_instance(instance: ProblemInstance, path: str | Path) -> Path:
    """Write ``instance`` to ``path`` and return the path."""
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n", encoding="utf-8")
    return p


def load_instance(path: str | Path) -> ProblemInstance:
    """Read an instance written by ``save_instance``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InstanceFormatError(f"{path}: not a UTF-8 JSON document ({exc.reason} at byte {exc.start})") from exc
    if not text.strip():
        raise InstanceFormatError(f"{path}: empty instance file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    return instance_from_dict(doc)
