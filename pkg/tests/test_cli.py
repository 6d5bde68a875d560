import json

import pytest

from biqbracket.cli_cmds.cli import looks_like_path, parse_coloring, resolve_input_path
from biqbracket.code_utils.config_consts import FIXTURES_DIR
from biqbracket.ideals.basis import clear_memory_cache
from biqbracket.main import run

TRIVIAL = {"m": 1, "circ": [[1]], "star": [[1]]}
NOT_A_BIQUANDLE = {"m": 2, "circ": [[1, 1], [1, 1]], "star": [[1, 1], [1, 1]]}


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("BIQBRACKET_CACHE_DIR", raising=False)
    clear_memory_cache()
    (tmp_path / "t1.json").write_text(json.dumps(TRIVIAL))
    (tmp_path / "bad.json").write_text(json.dumps(NOT_A_BIQUANDLE))
    return tmp_path


def cli(*argv, cache=True):
    args = list(argv)
    if cache:
        args += ["--cache-dir", "cache"]
    return run(args)


def test_input_paths():
    assert resolve_input_path("fixtures/X1.json") == FIXTURES_DIR / "X1.json"
    assert resolve_input_path("t1.json").name == "t1.json"
    assert resolve_input_path("O1+U1+") is None
    assert looks_like_path("knots/k.gauss")
    assert not looks_like_path("O1+U2-O3+U1+O2-U3+")
    assert parse_coloring("1, 2 3") == (1, 2, 3)
    with pytest.raises(ValueError):
        parse_coloring("1 x")


def test_colorings_of_the_unknot(capsys):
    assert cli("colorings", "--diagram", "()", "--biquandle", "fixtures/X1.json") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "3"
    assert len(lines) == 4


def test_colorings_as_json(capsys):
    assert cli("colorings", "--diagram", "fixtures/trefoil.gauss", "--biquandle", "fixtures/X2.json", "--format", "json") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["count"] == len(report["colorings"])
    assert report["semiarcs"] == 6


def test_check_biquandle(capsys):
    assert cli("check-biquandle", "--biquandle", "fixtures/X1.json") == 0
    assert "valid biquandle" in capsys.readouterr().out
    assert cli("check-biquandle", "--biquandle", "bad.json") == 1
    assert "not a biquandle" in capsys.readouterr().out


def test_malformed_biquandle_file_is_a_domain_error(isolated):
    (isolated / "scalar.json").write_text(json.dumps({"circ": 5, "star": 5}))
    assert cli("check-biquandle", "--biquandle", "scalar.json") == 1


def test_composite_prime_is_a_usage_error():
    assert cli("groebner", "--biquandle", "t1.json", "--prime", "32001") == 2


def test_symbolic_delta_is_only_for_brackets(capsys):
    assert cli("bracket", "--diagram", "O1+U1+", "--biquandle", "t1.json", "--symbolic-delta") == 0
    assert "delta" in capsys.readouterr().out
    assert cli("certify", "--diagram", "O1+U1+", "--biquandle", "t1.json", "--symbolic-delta") == 2


def test_missing_inputs_are_usage_errors():
    assert cli("colorings", "--diagram", "()") == 2
    assert cli("colorings", "--diagram", "missing.gauss", "--biquandle", "t1.json") == 2
    assert cli(cache=False) == 2


def test_malformed_diagram_is_a_domain_error():
    assert cli("colorings", "--diagram", "O1+U2+", "--biquandle", "t1.json") == 1
    assert cli("bracket", "--diagram", "O1+U1-", "--biquandle", "t1.json") == 1


def test_invalid_coloring_is_a_domain_error():
    assert cli("bracket", "--diagram", "O1+U1+", "--biquandle", "t1.json", "--coloring", "1 2 3") == 1


def test_version():
    assert run(["--version"]) == 0


def test_argparse_errors_are_returned():
    assert run(["colorings", "--no-such-flag"]) == 2
    assert run(["--help"]) == 0


def test_certify_reports_are_deterministic(capsys):
    argv = ["certify", "--diagram", "O1+U1+", "--biquandle", "t1.json", "--variant", "1", "--delta", "2", "--format", "json"]
    assert cli(*argv) == 0
    first = capsys.readouterr().out
    assert cli(*argv) == 0
    second = capsys.readouterr().out
    assert first == second
    certificate = json.loads(first)
    assert certificate["verdict"] == "LowerBoundOnly"
    assert certificate["bound"] == 0
    assert "seconds" not in first


def test_groebner_then_bracket_reduces(capsys, isolated):
    assert cli("groebner", "--biquandle", "t1.json", "--variant", "1", "--delta", "2") == 0
    assert "computed" in capsys.readouterr().out
    assert list((isolated / "cache").glob("*.json"))
    argv = ["bracket", "--diagram", "O1+U1+", "--biquandle", "t1.json", "--variant", "1", "--delta", "2"]
    assert cli(*argv, "--format", "json") == 0
    report = json.loads(capsys.readouterr().out)
    (value,) = report["values"]
    assert value["reduced"]
    assert sorted(t["normal_form"] for t in value["terms"]) == ["0", "1"]


def test_invariance_fuzz(capsys):
    argv = ["invariance-fuzz", "--biquandle", "t1.json", "--delta", "2", "--cases", "3", "--max-crossings", "3"]
    assert cli(*argv) == 0
    assert "3/3 cases passed" in capsys.readouterr().out


def test_config_file_supplies_defaults(capsys, isolated):
    (isolated / "pyproject.toml").write_text('[tool.biqbracket]\nformat = "json"\nprime = 7\n')
    assert cli("colorings", "--diagram", "()", "--biquandle", "t1.json") == 0
    assert json.loads(capsys.readouterr().out)["count"] == 1
    (isolated / "pyproject.toml").write_text("[tool.biqbracket]\nprime = 8\n")
    assert cli("colorings", "--diagram", "()", "--biquandle", "t1.json") == 2
