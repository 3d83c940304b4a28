import json
import subprocess
import sys

import pytest

from ortholab.cli import (
    EXIT_MISMATCH,
    EXIT_PASS,
    EXIT_SKIPPED,
    EXIT_USAGE,
    VerificationReport,
    main,
    parse_budget,
    to_tsv,
)
from ortholab.code_core import read_code


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_pass_json(capsys):
    code, out = run(capsys, "verify", "--family", "defset", "--q", "3", "--m", "3")
    assert code == EXIT_PASS
    doc = json.loads(out)
    assert doc["status"] == "PASS"
    assert [doc["n"], doc["k"], doc["d"]] == [9, 3, 6]
    assert doc["self_orthogonal"] is True


def test_verify_params_string(capsys):
    code, out = run(capsys, "verify", "--params", "family=c4 p=3 e=1 s=2")
    assert code == EXIT_PASS
    assert json.loads(out)["dual"]["d_perp"] == 3


def test_verify_mismatch_on_literal_table(capsys):
    code, out = run(capsys, "verify", "--params", "family=bch3 q=3 m=4")
    assert code == EXIT_MISMATCH
    doc = json.loads(out)
    assert doc["status"] == "MISMATCH"
    assert any("matches enumeration" in n for n in doc["notes"])


def test_verify_skipped_on_small_budget(capsys):
    code, out = run(capsys, "verify", "--params", "family=c4 p=3 e=1 s=2", "--budget", "100")
    assert code == EXIT_SKIPPED
    assert json.loads(out)["status"] == "SKIPPED"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--family", "c1", "--p", "3", "--m", "6", "--k", "4"],
        ["verify", "--family", "nope", "--q", "3"],
        ["verify"],
        ["frobnicate"],
        ["verify", "--params", "family=c4 p3"],
        ["report", "/nonexistent/report.json"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_tsv_output(capsys):
    code, out = run(capsys, "verify", "--params", "family=grm q=3 m=2 rho=1", "--format", "tsv")
    assert code == EXIT_PASS
    rows = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert rows["status"] == "PASS"
    assert rows["n"] == "9"


def test_report_roundtrip(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code = main(["verify", "--params", "family=grs q=27 k=3", "--out", str(path)])
    capsys.readouterr()
    assert code == EXIT_PASS
    doc = json.loads(path.read_text())
    assert VerificationReport.from_dict(doc).to_dict() == doc
    code, out = run(capsys, "report", str(path))
    assert code == EXIT_PASS
    assert json.loads(out) == doc


def test_report_of_mismatch_keeps_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    main(["verify", "--params", "family=bch3 q=3 m=4", "--out", str(path)])
    capsys.readouterr()
    assert main(["report", str(path), "--format", "tsv"]) == EXIT_MISMATCH


def test_errata_flag(capsys):
    code, out = run(capsys, "verify", "--params", "family=bch3 q=3 m=4", "--errata")
    assert code == EXIT_PASS
    assert json.loads(out)["status"] == "PASS"


def test_build_writes_code(tmp_path, capsys):
    path = tmp_path / "code.txt"
    code, out = run(capsys, "build", "--family", "c4", "--p", "3", "--e", "1", "--s", "2", "--out", str(path))
    assert code == EXIT_PASS
    assert json.loads(out)["n"] == 21
    built = read_code(str(path))
    assert (built.n, built.k) == (21, 5)


def test_parse_budget():
    assert parse_budget("2e8") == 200_000_000
    assert parse_budget("2^26") == 1 << 26
    with pytest.raises(Exception):
        parse_budget("0.5")


def test_to_tsv_flattens():
    text = to_tsv({"a": {"b": 1}, "c": [1, 2], "d": [{"e": 3}]})
    assert text.splitlines() == ["a.b\t1", "c\t[1, 2]", "d.0.e\t3"]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ortholab", "verify", "--params", "family=defset q=3 m=3", "--format", "tsv"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == EXIT_PASS
    assert "status\tPASS" in res.stdout
