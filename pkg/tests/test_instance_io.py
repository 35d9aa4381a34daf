import base64
import json

import numpy as np
import pytest

from src.errors import DimensionMismatchError, InstanceFormatError
from src.problem import ProblemInstance, generate_instance
from src.utils.instance_io import instance_to_dict, load_instance, save_instance


def test_round_trip_is_bit_exact(tmp_path):
    inst = generate_instance(5, 8, 3, noise_std=0.1, seed=9)
    path = save_instance(inst, tmp_path / "nested" / "inst.json")
    back = load_instance(path)
    assert back.a_matrix.tobytes() == inst.a_matrix.tobytes()
    assert back.y.tobytes() == inst.y.tobytes()
    assert back.x_true.tobytes() == inst.x_true.tobytes()
    assert back.true_support == inst.true_support
    assert (back.seed, back.noise_std) == (9, 0.1)


def test_round_trip_without_truth(tmp_path):
    inst = ProblemInstance(a_matrix=np.array([[1.0, -0.5], [1e-300, 3.0]]), y=np.array([np.pi, -0.0]))
    back = load_instance(save_instance(inst, tmp_path / "inst.json"))
    assert not back.has_truth
    assert back.a_matrix.tobytes() == inst.a_matrix.tobytes()
    assert back.y.tobytes() == inst.y.tobytes()


def test_document_layout():
    inst = generate_instance(2, 3, 1, seed=4)
    doc = instance_to_dict(inst)
    assert doc["format"] == "sparsebench-instance"
    assert doc["header"] == {"m": 2, "n": 3, "seed": 4, "noise_std": 0.0, "has_truth": True}
    assert doc["encoding"]["byte_order"] == "little"
    raw = base64.b64decode(doc["payload"]["a_matrix"])
    # row-major little-endian doubles
    assert np.frombuffer(raw, dtype="<f8").reshape(2, 3).tolist() == inst.a_matrix.tolist()


def test_header_payload_mismatch(tmp_path):
    inst = generate_instance(5, 8, 3, seed=1)
    doc = instance_to_dict(inst)
    four_rows = np.ascontiguousarray(inst.a_matrix[:4], dtype="<f8")
    doc["payload"]["a_matrix"] = base64.b64encode(four_rows.tobytes()).decode("ascii")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(DimensionMismatchError):
        load_instance(path)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("", encoding="utf-8")
    with pytest.raises(InstanceFormatError, match="empty"):
        load_instance(path)


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[1, 2, 3]",
        json.dumps({"format": "something-else"}),
        json.dumps({"format": "sparsebench-instance", "version": 99}),
    ],
)
def test_malformed_documents(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(InstanceFormatError):
        load_instance(path)


def test_non_utf8_bytes(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b"\xff\xfe\x00garbage")
    with pytest.raises(InstanceFormatError, match="UTF-8"):
        load_instance(path)


def test_missing_payload_and_bad_base64(tmp_path):
    doc = instance_to_dict(generate_instance(2, 2, 1, seed=0))
    broken = dict(doc, payload={"y": doc["payload"]["y"]})
    path = tmp_path / "missing.json"
    path.write_text(json.dumps(broken), encoding="utf-8")
    with pytest.raises(InstanceFormatError, match="incomplete"):
        load_instance(path)

    doc["payload"]["y"] = "***"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(InstanceFormatError, match="base64"):
        load_instance(path)
