import json
import subprocess
import sys

import pytest

from polarmult import fixtures
from polarmult.cli import EXIT_BUDGET, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, main


def write(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=2))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_polar_json_report(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["plane"])
    code, out = run(capsys, "polar", "--input", path, "--json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["command"] == "polar" and report["r"] == 2
    assert report["vectors"] == {"polar": [0, 1, 0]}
    assert report["margin_verified"] is True and report["window"]["width"] == 8
    assert set(report["timings"]) == {"polar"}


def test_echoed_input_reparses(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["double-line"])
    _code, out = run(capsys, "relative", "--input", path, "--json", "--seed", "9")
    report = json.loads(out)
    assert report["vectors"]["relative"] == [2] and report["vectors"]["polar_A"] == [1]
    from polarmult.problem import ProblemDescription

    echoed = ProblemDescription.from_dict(report["input"])
    assert echoed == fixtures.load("double-line").with_options(seed=9)


def test_human_output(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["double-line"])
    code, out = run(capsys, "check-birational", "-i", path)
    assert code == EXIT_OK and "verdict: Fails" in out


def test_verdict_commands(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["scaled-line"])
    code, out = run(capsys, "check-integral", "-i", path, "--json", "--no-timings")
    report = json.loads(out)
    assert code == EXIT_OK and report["verdict"]["outcome"] == "Fails"
    assert report["timings"] is None

    path = write(tmp_path, fixtures.CORPUS["plane-ideals"])
    code, out = run(capsys, "check-reduction-ideal", "-i", path, "--json")
    assert code == EXIT_INCONCLUSIVE and json.loads(out)["verdict"]["outcome"] == "Inconclusive"

    path = write(tmp_path, fixtures.CORPUS["module-reduction"])
    code, out = run(capsys, "check-reduction-module", "-i", path, "--json")
    report = json.loads(out)
    assert code == EXIT_OK and report["verdict"]["outcome"] == "Holds"
    assert report["assumptions_used"]


def test_assumption_flag_is_reported(tmp_path, capsys):
    doc = {"base_vars": [], "poly_vars": ["x", "y"], "relations": ["x^4"], "subalgebra_gens": ["y"],
           "options": {"n_power_cap": 3}}
    path = write(tmp_path, doc)
    code, out = run(capsys, "check-integral", "-i", path, "--json")
    assert code == EXIT_INCONCLUSIVE
    code, out = run(capsys, "check-integral", "-i", path, "--json", "--assume-equidimensional")
    report = json.loads(out)
    assert code == EXIT_OK and report["assumptions_used"] == ["B equidimensional (asserted)"]
    assert report["input"]["assumptions"]["equidimensional_B"] is True


def test_br_and_polar_ideal(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["module-non-reduction"])
    code, out = run(capsys, "br", "-i", path, "--json")
    report = json.loads(out)
    assert code == EXIT_OK and "verdict" not in report
    assert report["vectors"]["br_E"] == [0, 1, 1]
    path = write(tmp_path, fixtures.CORPUS["plane-ideals"])
    code, out = run(capsys, "polar-ideal", "-i", path, "--json")
    assert json.loads(out)["vectors"]["polar_J"] == [0, 1, 0]


def test_sv_command(tmp_path, capsys):
    path = write(tmp_path, fixtures.CORPUS["plane"])
    code, out = run(capsys, "sv", "-i", path, "--json", "--seed", "4")
    report = json.loads(out)
    assert code == EXIT_OK and report["routes_agree"] and report["seeds"] == [4, 5, 6]
    assert report["vectors"]["sv_seed_5"] == [0, 1, 0]


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"poly_vars": ["x"], "relations": ["x +"]}')
    code, out = run(capsys, "polar", "-i", str(bad), "--json")
    assert code == EXIT_INPUT and json.loads(out)["error"]["type"] == "InputError"

    code, out = run(capsys, "relative", "-i", write(tmp_path, fixtures.CORPUS["line"]))
    assert code == EXIT_INPUT and "subalgebra_gens" in out

    path = write(tmp_path, fixtures.CORPUS["adversarial"])
    code, out = run(capsys, "polar", "-i", path, "--vmax", "6", "--nmax", "6", "--json")
    report = json.loads(out)
    assert code == EXIT_INCONCLUSIVE and report["error"]["type"] == "Unstable"
    assert "vectors" not in report

    path = write(tmp_path, fixtures.CORPUS["rees-m"])
    code, out = run(capsys, "br", "-i", path, "--budget", "1", "--json")
    assert code == EXIT_BUDGET and json.loads(out)["error"]["type"] == "BudgetExceeded"

    code, _out = run(capsys, "polar", "-i", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT


def test_empty_support_is_reported(tmp_path, capsys):
    path = write(tmp_path, {"base_vars": ["u"], "poly_vars": ["x"], "relations": ["x"]})
    code, out = run(capsys, "polar", "-i", path, "--json")
    assert code == EXIT_INCONCLUSIVE and json.loads(out)["error"]["type"] == "EmptySupport"


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == EXIT_OK and out.count("PASS") == len(out.strip().splitlines())


def test_module_entry_point(tmp_path):
    path = write(tmp_path, fixtures.CORPUS["line"])
    proc = subprocess.run([sys.executable, "-m", "polarmult", "polar", "-i", path, "--json", "--no-timings"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["vectors"]["polar"] == [0, 1]


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(fixtures.CORPUS["field-line"])))
    code, out = run(capsys, "polar", "--json")
    assert code == EXIT_OK and json.loads(out)["vectors"]["polar"] == [1]
