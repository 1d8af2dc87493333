import json
import subprocess
import sys

import pytest

from multest.cli import main
from multest.corpus import SCENARIOS


@pytest.fixture(autouse=True)
def _restore_budget(monkeypatch):
    # main() writes the budget into the environment
    monkeypatch.setenv("MULTEST_BUDGET", "2000000")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def scenario_file(tmp_path, name, **changes):
    data = dict(SCENARIOS[name], **changes)
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_ord_cube(capsys):
    code, rep = run(["ord", "--model", "gm", "--point", "1", "--poly", "(x1-x0)^3",
                     "--tmax", "5"], capsys)
    assert code == 0 and rep["result"]["order"] == "3"
    assert rep["command"] == "ord" and "versions" in rep


def test_ord_nonvanishing(capsys):
    code, rep = run(["ord", "--poly", "x0"], capsys)
    assert code == 0 and rep["result"]["order"] == "0"


def test_ord_closure_member(capsys):
    code = main(["ord", "--model", "borel2", "--poly", "x3-x0"])
    assert code == 2
    assert "I(" in capsys.readouterr().err


def test_parse_errors(capsys):
    assert main(["ord", "--poly", "x1+"]) == 1
    assert main(["frobnicate"]) == 1


def test_constants_command(capsys):
    code, rep = run(["constants", "--model", "gl2"], capsys)
    assert code == 0 and rep["result"]["n"] == 4 and rep["result"]["c1"] == 1


def test_verify_builtin_gm(capsys):
    code, rep = run(["verify", "--builtin-suite", "gm"], capsys)
    assert code == 0 and rep["result"]["passed"]


def test_verify_corrupted_model(tmp_path, capsys):
    bad = {"name": "gm-bad", "matrix_size": 1, "free_entries": [[0, 0]], "lie_basis": [[[1]]],
           "q_tables": {"0,0": ["0", "2*x0*x1"], "0,1": ["-x0*x1", "0"]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code = main(["verify", "--model", str(path)])
    captured = capsys.readouterr()
    assert code == 3 and "(b)" in captured.err


def test_search_flagship(tmp_path, capsys):
    code, rep = run(["search", "--scenario", scenario_file(tmp_path, "gm-theorem2")], capsys)
    res = rep["result"]
    assert code == 0 and res["bound_lhs"] == res["bound_rhs"] == 4 and res["bound_verified"]


def test_search_failed_hypothesis(tmp_path, capsys):
    path = scenario_file(tmp_path, "gm-theorem2", poly="(x1-x0)^2")
    assert main(["search", "--scenario", path]) == 2


def test_search_unknown_field(tmp_path, capsys):
    path = scenario_file(tmp_path, "gm-theorem2", colour="red")
    assert main(["search", "--scenario", path]) == 1


def test_search_budget_exhausted(tmp_path, capsys):
    path = scenario_file(tmp_path, "gm-theorem2")
    assert main(["search", "--scenario", path, "--budget-gb", "3"]) == 4


def test_bezout_command(capsys):
    code, rep = run(["bezout", "--ideal", "(x1-x0)^2", "--D", "2"], capsys)
    assert code == 0 and rep["result"]["lhs"] == 2 and rep["result"]["rhs"] == 2


def test_search_is_byte_identical(tmp_path):
    path = scenario_file(tmp_path, "gm-theorem2")
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        subprocess.run([sys.executable, "-m", "multest.cli", "search", "--scenario", path,
                        "--seed", "5", "--out", str(out)], check=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
