import json

import pytest

from symhodge import analysis, cli


@pytest.fixture()
def kt_path():
    return analysis.corpus_path("kodaira_thurston.lie")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_text_output(capsys, kt_path):
    code, out, err = run_cli(capsys, "analyze", kt_path)
    assert code == 0
    assert "levels: lefschetz = 0, ddelta = 0 (dual 0), i = 0" in out
    assert "ddelta_failure @ degree 1: b" in out
    assert "consistency: PASS" in out


def test_analyze_json_output(capsys, kt_path):
    code, out, err = run_cli(capsys, "analyze", kt_path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["betti"] == [1, 3, 4, 3, 1]
    assert payload["lefschetz_level"] == 0
    assert payload["gates"]["nilpotent"] is True
    assert payload["invariant_suite"] is None


def test_analyze_witnesses_flag(capsys, kt_path):
    code, out, _ = run_cli(capsys, "analyze", kt_path, "--witnesses")
    assert code == 0
    assert "natural map per degree:" in out
    assert "degree 3: kernel dim 1" in out


def test_analyze_invariants_flag(capsys, kt_path):
    code, out, _ = run_cli(capsys, "analyze", kt_path, "--invariants")
    assert code == 0
    assert "invariant suite: pass" in out


def test_check_ok(capsys):
    code, out, _ = run_cli(capsys, "check", analysis.corpus_path("solv6.lie"))
    assert code == 0
    assert out.startswith("ok: dim 6")


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.lie"
    bad.write_text("dim 3\nomega = e1^e2\n")
    code, _, err = run_cli(capsys, "check", str(bad))
    assert code == cli.EXIT_PARSE == 2
    assert "line 1" in err

    missing = tmp_path / "nope.lie"
    code, _, err = run_cli(capsys, "check", str(missing))
    assert code == 2


def test_validation_error_exit_code(capsys, tmp_path):
    degenerate = tmp_path / "degenerate.lie"
    degenerate.write_text("dim 4\nomega = e1^e2\n")
    code, _, err = run_cli(capsys, "analyze", str(degenerate))
    assert code == cli.EXIT_VALIDATION == 1
    assert "validation error" in err


def test_suite_on_document(capsys, kt_path):
    code, out, _ = run_cli(capsys, "suite", "--file", kt_path)
    assert code == 0
    assert "passed" in out


def test_suite_random_trials(capsys):
    code, out, _ = run_cli(capsys, "suite", "--seed", "42", "--dim", "4", "--trials", "2")
    assert code == 0
    assert "passed on 4 instance(s)" in out  # two corpus documents + two draws


def test_suite_failure_exit_code(capsys, monkeypatch):
    broken = analysis.SuiteResult(False, 1, ["synthetic failure"], "dim 4\nomega = e1^e2\n")
    monkeypatch.setattr(analysis, "run_invariant_suite", lambda **kw: broken)
    monkeypatch.setattr(cli.analysis, "run_invariant_suite", lambda **kw: broken)
    code, out, _ = run_cli(capsys, "suite", "--trials", "1")
    assert code == cli.EXIT_SUITE == 3
    assert "synthetic failure" in out
    assert "counterexample" in out


def test_search_subcommand(capsys):
    code, out, err = run_cli(capsys, "search", "--dim", "4", "--target-s", "0",
                             "--trials", "12", "--seed", "3")
    assert code == 0
    assert "found" in err
    if out.strip():
        from symhodge import dsl
        first = out.split("\n\n")[0] + "\n"
        doc = dsl.parse(first)
        assert doc.dim == 4
