import json
import subprocess
import sys

import pytest

from cyclomod import commands
from cyclomod.cli import main, parse_ranks, run
from cyclomod.verify import UsageError, VerifyConfig, _lookup

GOLDEN = commands.load_data("published_examples.json")["golden"]


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("case", GOLDEN, ids=[c["id"] for c in GOLDEN])
def test_golden(case):
    rep, code = run(case["argv"])
    assert code == 0
    payload = rep.to_json()
    for key, expected in case["expect"].items():
        assert _lookup(payload, key) == expected, key


def test_ring_json(capsys):
    code, out, _ = call(capsys, "ring", "3", "6", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["order"], data["beta"], data["classification"]) == (4, 2, "Field(2,2)")
    assert data["schema"] == 1 and data["exit_status"] == 0


def test_phi_text(capsys):
    assert call(capsys, "phi", "1")[1] == "x - 1\n"


def test_cover_text(capsys):
    code, out, _ = call(capsys, "cover", "--n", "3", "--m", "1,1,1")
    assert code == 0
    assert "x^2 + x + 1" in out
    assert any(line.split()[:2] == ["genus", "1"] for line in out.splitlines())


def test_deterministic_bytes(capsys):
    argv = ["intersect", "--n", "3", "--m", "1,1,1,1,1,1", "--json"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first


def test_notes_are_not_errors(capsys):
    code, out, _ = call(capsys, "cover", "--n", "12", "--m", "7,2,2,2,11", "--json")
    data = json.loads(out)
    assert code == 0
    assert {d["severity"] for d in data["diagnostics"]} == {"NOTE"}
    assert any("v(7)" in d["message"] for d in data["diagnostics"])


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["ring", "3"],
    ["lattice", "--n", "6", "--ranks", "1,1,1"],
    ["lattice", "--n", "6", "--ranks", "1,1,1,1", "--gens", "{bad"],
    ["cover", "--n", "3"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


@pytest.mark.parametrize("argv,name", [
    (["cover", "--n", "4", "--m", "1,1,1"], "InvalidBranchData"),
    (["intersect", "--n", "4", "--m", "1,1,2"], "PreconditionTwoFull"),
    (["lattice", "--n", "6", "--ranks", "1,1,1,1", "--gens", '[{"blocks": {"1": [[1]]}}]'], "ConditionBViolated"),
    (["bdf", "enumerate", "--n", "6", "--ranks", "1,1,1,1", "--budget", "10"], "BudgetExceeded"),
])
def test_computation_errors_exit_1(capsys, argv, name):
    code, out, err = call(capsys, *argv, "--json")
    assert code == 1
    assert name in err
    assert json.loads(out)["error"]["type"] == name


def test_out_file(tmp_path, capsys):
    target = tmp_path / "census.json"
    code, _, _ = call(capsys, "bdf", "enumerate", "--n", "2", "--ranks", "1,1", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["count"] == 2


def test_batch(tmp_path, capsys):
    batch = tmp_path / "batch.json"
    batch.write_text(json.dumps([{"n": 3, "m": [1, 1, 1]}, {"n": 12, "m": [7, 2, 2, 2, 11]}]))
    code, out, _ = call(capsys, "cover", "--batch", str(batch), "--json")
    assert code == 0
    assert [r["genus"] for r in json.loads(out)["results"]] == [1, 15]


def test_bdf_validate_file(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(json.dumps(commands.load_data("datum_n6.json")))
    code, out, _ = call(capsys, "bdf", "validate", str(path), "--json")
    assert code == 0 and json.loads(out)["ok"]


def test_parse_ranks():
    assert parse_ranks(6, "2,2,1,1") == {1: 2, 2: 2, 3: 1, 6: 1}
    assert parse_ranks(6, "1:2,3:1") == {1: 2, 3: 1}
    with pytest.raises(UsageError):
        parse_ranks(6, "1,1")
    with pytest.raises(UsageError):
        parse_ranks(6, "4:1")


def test_verify_all_small(capsys):
    code, out, _ = call(capsys, "verify-all", "--n-max", "6", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["failed"] == 0 and data["passed"] > 0
    assert all(d["severity"] == "NOTE" for d in data["diagnostics"])


def test_verify_config(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    assert call(capsys, "verify-all", "--config", str(empty))[0] == 2
    with pytest.raises(UsageError):
        VerifyConfig.from_json({"bogus": 1})
    cfg = VerifyConfig.from_json({"n_max": 8, "two_full_cases": 3})
    assert cfg.n_max == 8 and cfg.two_full_cases == 3 and cfg.crt_ns == (4, 6, 8)


def test_console_script_process():
    proc = subprocess.run([sys.executable, "-m", "cyclomod", "ring", "1", "6"], capture_output=True, text=True)
    assert proc.returncode == 0
    bad = subprocess.run([sys.executable, "-m", "cyclomod", "ring"], capture_output=True, text=True)
    assert bad.returncode == 2
