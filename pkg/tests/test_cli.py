import json
import os

import pytest

from weilkit.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_validate_accept(capsys):
    code, doc, _ = invoke(capsys, "validate", "--q", "32", "--poly", "32,-2,1")
    assert code == 0
    assert doc["schema"] == "weilkit/1"
    assert doc["accepted"] is True


def test_validate_reject_exit_2(capsys):
    code, doc, _ = invoke(capsys, "validate", "--q", "2", "--poly", "2,-5,1")
    assert code == 2
    assert doc["accepted"] is False
    assert doc["reason"] == "real-root-outside-bound"


def test_bad_request_exit_1(capsys):
    code, doc, _ = invoke(capsys, "validate", "--q", "12", "--poly", "1,1")
    assert code == 1
    assert "error" in doc
    code, doc, _ = invoke(capsys, "validate", "--q", "4", "--poly", "nope")
    assert code == 1
    # mutually exclusive flags
    code, doc, _ = invoke(
        capsys, "validate", "--q", "4", "--p", "2", "--r", "2", "--poly", "1,1"
    )
    assert code == 1


def test_invariants_document(capsys):
    code, doc, _ = invoke(capsys, "invariants", "--q", "32", "--poly", "32,-2,1")
    assert code == 0
    assert doc["s"] == 5 and doc["dim"] == 5
    assert doc["m"] == 2 and doc["m_reduced"] == 1


def test_enumerate_deterministic(capsys):
    code, doc1, raw1 = invoke(capsys, "enumerate", "--q", "2", "--max-degree", "2")
    code2, doc2, raw2 = invoke(capsys, "enumerate", "--q", "2", "--max-degree", "2")
    assert code == code2 == 0
    assert raw1 == raw2
    assert doc1["count"] == 5


def test_order_and_components(capsys):
    code, doc, _ = invoke(
        capsys, "order", "--q", "3", "--poly", "3,0,1", "--poly", "3,1,1"
    )
    assert code == 0
    assert len(doc["basis_labels"]) == 4
    code, doc, _ = invoke(
        capsys, "components", "--q", "3", "--poly", "3,0,1", "--poly", "3,1,1"
    )
    assert code == 0
    assert doc["count"] == 2


def test_dieudonne_center(capsys):
    code, doc, _ = invoke(
        capsys, "dieudonne-center", "--q", "9", "--poly", "9,0,1", "--precision", "4"
    )
    assert code == 0
    assert doc["passed"] is True
    assert doc["center_rank"] == 2


def test_example_sec9(capsys):
    code, doc, _ = invoke(capsys, "example-sec9", "--p", "3")
    assert code == 0
    assert doc["order_index"] == 81
    assert doc["lattice_classes"] == 2
    assert doc["center_index_in_gaussian"] == 3
    assert doc["fiber_product"] == {"index": 9, "witt_colength": 1}
    assert doc["r_pi_index_in_maximal"] == 3
    code, doc, _ = invoke(capsys, "example-sec9", "--p", "5")
    assert code == 2


def test_gamma_witness(capsys):
    code, doc, _ = invoke(capsys, "gamma-witness", "--q", "8")
    assert code == 0
    assert doc["divisor"] == 12
    assert doc["witness_sr"]["s"] == 3
    assert doc["witness_s2"]["s"] == 2


def test_ingest_roundtrip(tmp_path, capsys):
    # the five degree-2 classes for q=2: zero diffs at bound 2
    path = tmp_path / "classes.csv"
    lines = ["2,2,%d,1" % t for t in range(-2, 3)]
    path.write_text("\n".join(lines) + "\n")
    code, doc, _ = invoke(
        capsys, "ingest", "--q", "2", "--path", str(path), "--max-degree", "2"
    )
    assert code == 0
    assert doc["valid"] == 5
    assert doc["rejected"] == []
    assert doc["not_in_enumeration"] == []
    assert doc["missing_from_file"] == []


def test_ingest_rejections(tmp_path, capsys):
    path = tmp_path / "classes.csv"
    path.write_text("2,2,-5,1\ngarbage\n2,2,0,1\n")
    code, doc, _ = invoke(
        capsys, "ingest", "--q", "2", "--path", str(path), "--max-degree", "2"
    )
    assert code == 0  # per-line problems are non-fatal
    reasons = {r["line"]: r["reason"] for r in doc["rejected"]}
    assert reasons[1] == "real-root-outside-bound"
    assert reasons[2] == "malformed"
    assert doc["valid"] == 1


def test_ingest_empty(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    path.write_text("")
    code, doc, _ = invoke(
        capsys, "ingest", "--q", "2", "--path", str(path), "--max-degree", "2"
    )
    assert code == 0
    assert doc["records"] == 0


def test_ingest_json_format(tmp_path, capsys):
    path = tmp_path / "classes.json"
    path.write_text(json.dumps([{"q": 2, "coefficients": [2, 0, 1]}]))
    code, doc, _ = invoke(
        capsys, "ingest", "--q", "2", "--path", str(path), "--max-degree", "2"
    )
    assert code == 0
    assert doc["valid"] == 1


def test_cache_byte_identical(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WEILKIT_CACHE_DIR", str(tmp_path / "cache"))
    code, _, raw1 = invoke(capsys, "enumerate", "--q", "3", "--max-degree", "2")
    assert code == 0
    files = os.listdir(tmp_path / "cache")
    assert len(files) == 1
    # second run hits the cache
    code, _, raw2 = invoke(capsys, "enumerate", "--q", "3", "--max-degree", "2")
    assert raw1 == raw2
    # verification mode recomputes and agrees
    code, _, raw3 = invoke(
        capsys, "--verify-cache", "enumerate", "--q", "3", "--max-degree", "2"
    )
    assert code == 0 and raw3 == raw1
    # corrupt the cache entry: verification must fail
    target = tmp_path / "cache" / files[0]
    target.write_text(raw1.replace('"count": 7', '"count": 8'))
    code, doc, _ = invoke(
        capsys, "--verify-cache", "enumerate", "--q", "3", "--max-degree", "2"
    )
    assert code == 1
    assert "error" in doc


def test_no_cache_flag(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WEILKIT_CACHE_DIR", str(tmp_path / "cache"))
    code, _, _ = invoke(capsys, "--no-cache", "enumerate", "--q", "3", "--max-degree", "2")
    assert code == 0
    assert not (tmp_path / "cache").exists()


def test_output_file(tmp_path, capsys):
    out = tmp_path / "doc.json"
    code = run(["--output", str(out), "validate", "--q", "9", "--poly", "9,0,1"])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["accepted"] is True
