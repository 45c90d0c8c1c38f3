import json
import os

import pytest

from logtk.src.commands.abgroup import parse_matrix
from logtk.src.main import main
from logtk.src.utils.errors import LogtkError

MANIFESTS = os.path.join(os.path.dirname(__file__), "..", "manifests")


def manifest(name: str) -> str:
    return os.path.join(MANIFESTS, name)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith("LOGTK_"):
            monkeypatch.delenv(key)


def test_check_log_point_holds(capsys):
    code = main(["check", "log-regular", manifest("logpoint.toml"), "--target", "logpoint"])
    out = capsys.readouterr().out
    assert code == 0
    assert "== log-regular:logpoint (is_log_regular) ==" in out
    assert "status: holds" in out


def test_run_node_fails(capsys):
    code = main(["run", manifest("node.toml"), "--json"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 1
    reports = [json.loads(line) for line in lines]
    assert [r["task"] for r in reports] == ["valid", "regular", "kato"]
    assert set(reports[0]) == {"task", "procedure", "status", "certificate", "preconditions", "stats", "ms"}
    assert reports[1]["status"] == "fails"
    assert reports[1]["certificate"]["witness"]["tor1_dimension"] == 1


def test_run_unknown_task(capsys):
    assert main(["run", manifest("node.toml"), "--task", "nope"]) == 2
    assert capsys.readouterr().err.startswith("logtk: unresolved reference 'nope'")


def test_kummer_cover_over_two_fields(capsys):
    assert main(["run", manifest("kummer.toml")]) == 0
    assert main(["run", manifest("kummer.toml"), "--field", "Fp(2)"]) == 1


def test_abgroup_snf(capsys):
    assert main(["abgroup", "snf", "--matrix", "2,4;0,6"]) == 0
    assert "D = diag(2, 6)" in capsys.readouterr().out


def test_abgroup_coker_json(capsys):
    assert main(["abgroup", "coker", "--matrix", "2,4;0,6", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["diagonal"] == [2, 6]
    assert "cokernel" in doc


def test_parse_matrix_errors():
    assert parse_matrix("1, 2; 3, 4") == [[1, 2], [3, 4]]
    for bad in ("", "1,x", "1,2;3"):
        with pytest.raises(LogtkError):
            parse_matrix(bad)


def test_diff_log_point(capsys):
    assert main(["diff", manifest("logpoint.toml"), "--map", "structure", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rank"] == 2
    assert doc["relations"] == []


def test_normalize_prints_sections_in_order(capsys):
    assert main(["normalize", manifest("node.toml")]) == 0
    first = capsys.readouterr().out
    assert first.startswith("[monoid.N2]")


def test_replay_round_trip(tmp_path, capsys):
    assert main(["run", manifest("node.toml"), "--json"]) == 1
    path = tmp_path / "reports.jsonl"
    path.write_text(capsys.readouterr().out, encoding="utf-8")
    assert main(["--replay", str(path)]) == 1
    out = capsys.readouterr().out
    assert "regular: fails" in out
    assert "valid: holds" in out


def test_archive_and_replay(tmp_path, capsys):
    archive = str(tmp_path / "runs.db")
    assert main(["run", manifest("logpoint.toml"), "--task", "regular", "--archive", archive]) == 0
    capsys.readouterr()
    assert main(["replay", "--archive", archive, "--json"]) == 0
    (line,) = capsys.readouterr().out.splitlines()
    doc = json.loads(line)
    assert doc["task"] == "regular"
    assert doc["status"] == "holds"
    assert doc["claims"] > 0


def test_malformed_manifest(tmp_path, capsys):
    path = tmp_path / "bad.toml"
    path.write_text("[ring.A]\nvariables = [\n", encoding="utf-8")
    assert main(["run", str(path)]) == 2
    assert "line" in capsys.readouterr().err


def test_no_command(capsys):
    assert main([]) == 2
