import csv
import json

import pytest

from fqmenon import cli, identity


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simple_commands(capsys):
    assert run(capsys, "phi", "--field", "p=2,n=1", "--H", "T^2")[:2] == (0, "2\n")
    assert run(capsys, "phik", "--k", "2", "--field", "p=3,n=1", "--H", "T")[:2] == (0, "2\n")
    assert run(capsys, "conductor", "--field", "p=3,n=1", "--H", "T", "--chi", "1")[:2] == (0, "T\n")
    assert run(capsys, "factor", "--field", "p=2", "--H", "T^2+T")[:2] == (0, "T*(T+1)\n")
    code, out, _ = run(capsys, "chars", "--field", "p=3", "--H", "T")
    assert code == 0 and len(out.splitlines()) == 2


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "phi", "--field", "p=2", "--H", "T^^2")[0] == 2
    assert run(capsys, "phi", "--field", "garbage", "--H", "T")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "phi", "--field", "p=4", "--H", "T")[0] == 3
    assert run(capsys, "phi", "--field", "p=2")[0] == 3
    assert run(capsys, "conductor", "--field", "p=3", "--H", "T", "--chi", "5")[0] == 3
    assert run(capsys, "verify", "--suite", "theorem2", "--field", "p=2", "--H", "T", "--S", "T")[0] == 3
    out = tmp_path / "b.json"
    code = run(capsys, "verify", "--suite", "theorem2", "--field", "p=3", "--H", "T^3", "--l", "3",
               "--s", "2", "--budget", "1000", "--out", str(out))[0]
    assert code == 4
    assert json.loads(out.read_text())["summary"]["budget_exceeded"] > 0


@pytest.mark.parametrize("argv", [
    ["--suite", "theorem1", "--field", "p=2,n=1", "--maxdeg", "3", "--k", "3"],
    ["--suite", "theorem2", "--field", "p=2,n=1", "--H", "T^2", "--l", "2", "--s", "1", "--seed", "7"],
    ["--suite", "lemma43", "--field", "p=2,n=1", "--maxdeg", "3"],
    ["--suite", "all", "--field", "p=2,n=1", "--maxdeg", "2", "--samples", "20"],
])
def test_verify_examples_pass(capsys, tmp_path, argv):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", *argv, "--out", str(out))
    assert code == 0, err
    doc = json.loads(out.read_text())
    assert doc["summary"]["failed"] == 0 and doc["summary"]["total"] > 0


def test_injected_failure_flips_exit_code(capsys, tmp_path, monkeypatch):
    real = identity.gcd_sum_rhs
    calls = {"n": 0}

    def broken(inst):
        calls["n"] += 1
        v = real(inst)
        return v + 1 if calls["n"] == 3 else v

    monkeypatch.setattr(identity, "gcd_sum_rhs", broken)
    out = tmp_path / "r.json"
    code = run(capsys, "verify", "--suite", "theorem2", "--field", "p=2", "--H", "T^2", "--out", str(out))[0]
    assert code == 1
    assert json.loads(out.read_text())["summary"]["failed"] == 1


def test_report_round_trip_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "theorem2", "--field", "p=3", "--maxdeg", "2", "--seed", "11", "--no-timing"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    text = a.read_text()
    assert text == b.read_text()
    doc = json.loads(text)
    assert json.dumps(doc, indent=1) + "\n" == text
    for rec in doc["records"]:
        assert {"lhs", "rhs", "abs_diff", "pass", "terms", "elapsed_ms", "mode"} <= set(rec)
        if rec["mode"] == "exact":
            assert rec["lhs_exact"] == rec["rhs_exact"]


def test_csv_columns(capsys, tmp_path):
    out = tmp_path / "r.csv"
    assert run(capsys, "verify", "--suite", "lemma21", "--field", "p=2", "--maxdeg", "2",
               "--format", "csv", "--out", str(out))[0] == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == cli.CSV_COLUMNS
    assert all(r[7] == "true" for r in rows[1:])


def test_instance_file(capsys, tmp_path):
    inst = {"field": {"p": 3, "n": 1}, "H": "T^2+T", "l": 2, "s": 1, "chi": 1,
            "lambdas": ["T"], "S": "2", "F": "tau", "mode": "auto"}
    path = tmp_path / "i.json"
    path.write_text(json.dumps(inst))
    out = tmp_path / "r.json"
    assert run(capsys, "verify", "--instance", str(path), "--out", str(out))[0] == 0
    rec = json.loads(out.read_text())["records"][0]
    assert rec["instance"]["H"] == "T^2+T" and rec["pass"]
    path.write_text("{not json")
    assert run(capsys, "verify", "--instance", str(path))[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--field", "p=2", "--H", "T^3", "--l", "1", "--l", "2", "--s", "1", "--format", "csv")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0
    assert [int(r["terms"]) for r in rows] == [2**6, 2**9]
    assert all(r["rhs_terms"] == "4" and r["agree"] == "True" for r in rows)
