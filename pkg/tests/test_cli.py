import json
import subprocess
import sys

import pytest

from wakeford.cli import RunConfig, main, parse_set_literal, run
from wakeford.errors import DomainError, SpecParseError
from wakeford.groups import make_group

KEYS = ["version", "command", "config", "group", "inputs", "result", "records"]


def _json(capsys, argv):
    status = main(argv)
    return status, json.loads(capsys.readouterr().out)


def test_parse_set_literal():
    g = make_group("cyclic:10")
    assert parse_set_literal(g, "1,3,7").elements() == [1, 3, 7]
    assert parse_set_literal(g, "2..5").elements() == [2, 3, 4, 5]
    assert parse_set_literal(g, "3, 1..2,3").elements() == [1, 2, 3]
    with pytest.raises(DomainError, match="'9'"):
        parse_set_literal(make_group("cyclic:4"), "9")
    with pytest.raises(DomainError, match="'2..4'"):
        parse_set_literal(make_group("cyclic:4"), "0,2..4")
    for bad in ("a", "1,,2", "3..1", "-1"):
        with pytest.raises(SpecParseError):
            parse_set_literal(g, bad)


def test_mu_command(capsys):
    status, rep = _json(capsys, ["mu", "--group", "cyclic:10", "--b", "1..4", "--a", "0..3"])
    assert status == 0
    assert list(rep) == KEYS
    assert rep["result"]["mu"] == "1"
    assert rep["inputs"] == {"B": [1, 2, 3, 4], "A": [0, 1, 2, 3]}


def test_matchable_and_violator(capsys):
    status, rep = _json(capsys, ["matchable", "--group", "cyclic:4", "--b", "1,2", "--a", "0,2"])
    assert status == 0
    assert rep["result"]["exists"] is False and rep["result"]["hall_violator"] == [2]
    assert rep["result"]["mu_exact"] is False


def test_classify_command(capsys):
    status, rep = _json(capsys, ["classify", "--group", "cyclic:10", "--s", "1,3"])
    assert status == 0 and rep["result"]["chowla"] is True


def test_kappa_command(capsys):
    status, rep = _json(capsys, ["kappa", "--group", "cyclic:5", "--s", "0..2", "--k", "1"])
    assert status == 0
    assert rep["result"]["kappa"] == 2 and rep["result"]["fragment"] == [0]


def test_verify_losonczy(capsys):
    status, rep = _json(capsys, ["verify", "LOSONCZY", "--max-order", "12"])
    assert status == 0
    assert rep["result"]["totals"]["fail"] == 0 and rep["records"]


def test_counterexample_losonczy(capsys):
    status, rep = _json(capsys, ["counterexample", "losonczy", "--max-order", "10"])
    assert status == 0 and rep["result"]["all_mu_zero"]


def test_verify_failure_exit_status(capsys):
    # S = {3} in cyclic:6 with T a coset of <S> is a recorded EHO failure
    status, rep = _json(capsys, ["verify", "EHO", "--group", "cyclic:6", "--max-set-size", "2"])
    assert status == 1 and rep["result"]["totals"]["fail"] > 0


def test_csv_summary(capsys):
    status = main(["verify", "K1", "--group", "cyclic:5", "--group", "cyclic:6", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert status == 0
    assert lines[0] == "statement_id,group,pass,fail,skipped"
    assert lines[1].startswith("K1,cyclic:5,") and lines[-1].startswith("K1,TOTAL,")


@pytest.mark.parametrize("argv", [
    ["mu", "--group", "cyclic:4", "--b", "9", "--a", "1"],
    ["mu", "--group", "cyclic:4", "--b", "1,2", "--a", "1"],
    ["mu", "--group", "cyclic:0", "--b", "1", "--a", "1"],
    ["mu", "--b", "1", "--a", "1"],
    ["kappa", "--group", "cyclic:5", "--s", "1,2"],
    ["verify", "NOPE", "--max-order", "5"],
    ["verify", "K1"],
    ["mu", "--group", "cyclic:5", "--b", "1", "--a", "1", "--format", "csv"],
    ["counterexample", "other"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2


def test_deterministic_bytes(tmp_path):
    cfg = RunConfig(command="verify", target="OLSON_XY", groups=("cyclic:12",), sample=200, seed=1,
                    max_set_size=5)
    assert run(cfg) == run(cfg)
    other = RunConfig(command="verify", target="OLSON_XY", groups=("cyclic:12",), sample=200, seed=1,
                      max_set_size=5, out=str(tmp_path / "x.json"))
    assert run(cfg) == run(other)


def test_out_file_and_module_entry(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "wakeford", "mu", "--group", "cyclic:5", "--b", "1,2",
                           "--a", "1,2", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ""
    rep = json.loads(out.read_text())
    assert rep["result"]["mu"] == "1" and rep["config"]["groups"] == ["cyclic:5"]
    assert "out" not in rep["config"]
