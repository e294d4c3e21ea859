import json

import pytest

from derivedhecke.cli import run


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_audit_example(capsys):
    code, doc = call(["audit", "--preset", "GL2", "--p", "3", "--l0", "1"], capsys)
    assert code == 0 and doc["status"] == "pass"


def test_ext_example(capsys):
    code, doc = call(["ext", "--vars", "1", "--field", "Q", "--gens", '[["X^2"]]'], capsys)
    assert code == 1
    assert doc["checks"][0]["witness"] == {"failing_degree": 1}


def test_ext_generated(capsys):
    code, _ = call(["ext", "--vars", "2", "--field", "Fp:5", "--gens", '["X1 + X2^2", [[1, [0, 1]]]]',
                    "--l0", "2", "--q0", "3"], capsys)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["audit", "--bogus"],
    [],
    ["ext", "--vars", "1", "--gens", "not json"],
    ["ext", "--vars", "1", "--field", "Fp:4", "--gens", '["X"]'],
    ["hecke", "--preset", "GL2", "--lambda", "0,1", "--prime", "3"],
    ["audit", "--preset", "GL2", "--l0", "5"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_rootdata(capsys):
    code, doc = call(["rootdata", "--preset", "Sp4", "--chi", "[2, 3]"], capsys)
    assert code == 0 and len(doc["checks"]) >= 6


def test_rootdata_custom_datum(capsys, tmp_path):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps({"rank": 1, "roots": [[2], [-2]], "coroots": [[1], [-1]], "simple": [0]}))
    code, _ = call(["rootdata", "--datum", str(path)], capsys)
    assert code == 0
    path.write_text(json.dumps({"rank": 1, "roots": [[2], [-2]], "coroots": [[2], [-2]], "simple": [0]}))
    assert run(["rootdata", "--datum", str(path)]) == 2


def test_hecke(capsys):
    code, doc = call(["hecke", "--preset", "GL2", "--lambda", "2,0", "--prime", "3", "--emit-reps", "--oracle"],
                     capsys)
    assert code == 0
    assert doc["checks"][0]["details"]["oracle_count"] == 9


def test_dims(capsys, tmp_path):
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps({"preset": "GL3", "l0": 2, "condition": "crystalline", "selmer": 1}))
    code, doc = call(["dims", "--ledger", str(path)], capsys)
    assert code == 0 and "header" in doc
    path.write_text(json.dumps({"preset": "GL2", "l0": 1, "condition": "crystalline",
                                "global": {"selmer": 0, "dual_selmer": 0}}))
    assert run(["dims", "--ledger", str(path)]) == 1


@pytest.mark.parametrize("check,extra", [
    ("cosets", ["--lambda", "1,0"]),
    ("reps", ["--lambda", "1,0"]),
    ("upfact", ["--lambda", "1,0", "--c", "2"]),
    ("diamond", ["--lambda", "1,0", "--c", "2"]),
    ("homs", ["--c", "2"]),
])
def test_finite(check, extra, capsys):
    code, _ = call(["finite", "--n", "2", "--p", "3", "--check", check] + extra, capsys)
    assert code == 0


def test_finite_central_upfact_fails(capsys):
    code, doc = call(["finite", "--check", "upfact", "--lambda", "1,1", "--c", "2"], capsys)
    assert code == 1 and doc["checks"][0]["witness"] is not None


def test_out_dir_and_determinism(tmp_path, monkeypatch, capsys):
    argv = ["audit", "--preset", "GL2", "--p", "2", "--l0", "1", "--seed", "5"]
    assert run(argv + ["--out", str(tmp_path / "a")]) == 0
    monkeypatch.setenv("DERIVEDHECKE_OUT", str(tmp_path / "b"))
    assert run(argv) == 0
    capsys.readouterr()
    a, b = (tmp_path / "a" / "audit.json").read_bytes(), (tmp_path / "b" / "audit.json").read_bytes()
    assert a == b
    assert (tmp_path / "a" / "audit.md").exists() and (tmp_path / "a" / "audit.timings.json").exists()
