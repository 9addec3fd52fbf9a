import json
import subprocess
import sys

import pytest

from premetric.catalog import FormSpec, builtin_catalog, lookup, parse_form
from premetric.cli import COMMANDS, RunConfig, run_command
from premetric.errors import InvalidForm, ParseError
from premetric.quadratic_forms import evaluate


@pytest.fixture
def form_file(tmp_path):
    def write(doc, name="form.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return write


def test_parse_form_examples():
    semion = parse_form('{"orders":[2],"q_diag":["1/4"]}')
    assert str(evaluate(semion, (1,))) == "1/4"
    toric = parse_form({"orders": [2, 2], "q_diag": ["0/1", "0/1"], "sigma_offdiag": {"0,1": "1/2"}})
    assert toric == lookup("toric")
    with pytest.raises(InvalidForm):
        parse_form({"orders": [2], "q_diag": ["1/3"]})


@pytest.mark.parametrize("doc,exc,where", [
    ('{"orders": [2], "q_diag": ', ParseError, "line 1"),
    ({"q_diag": ["0"]}, ParseError, "orders"),
    ({"orders": [2], "q_diag": ["0"], "extra": 1}, ParseError, "extra"),
    ({"orders": [2, 2], "q_diag": ["0"]}, InvalidForm, "q_diag has 1"),
    ({"orders": [2], "q_diag": ["x/y"]}, ParseError, "q_diag[0]"),
    ({"orders": [2], "q_diag": [0.5]}, ParseError, "q_diag[0]"),
    ({"orders": [0], "q_diag": ["0"]}, InvalidForm, "orders[0]"),
    ({"orders": [2, 4], "q_diag": ["0", "0"], "sigma_offdiag": {"0,1": "1/4"}}, InvalidForm, ""),
    ({"orders": [2, 2], "q_diag": ["0", "0"], "sigma_offdiag": {"1,0": "1/2"}}, InvalidForm, "1,0"),
    ({"orders": [2, 2], "q_diag": ["0", "0"], "sigma_offdiag": {"a": "1/2"}}, ParseError, "'a'"),
])
def test_parse_form_errors(doc, exc, where):
    with pytest.raises(exc) as info:
        parse_form(doc)
    assert where in str(info.value)


def test_catalog_contents():
    specs = builtin_catalog()
    assert [s.name for s in specs] == ["triv2", "semion", "svec", "z3", "toric", "klein0", "z4std",
                                       "z4ferm", "z4tan", "z2z4", "cube0"]
    for s in specs:
        q = s.to_form()
        assert FormSpec.from_form(q).to_form() == q
        assert parse_form(json.dumps(FormSpec.from_form(q).to_json())) == q
    assert str(lookup("z2z4")((0, 1))) == "1/8"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(max_group_order=0)
    with pytest.raises(ValueError):
        RunConfig(fmt="xml")
    assert RunConfig(threads=2).fmt == "json"


def test_picard_report(form_file):
    path = form_file({"name": "toric", "orders": [2, 2], "q_diag": ["0/1", "0/1"],
                      "sigma_offdiag": {"0,1": "1/2"}})
    res = run_command(["picard", "--input", path, "--format", "json"])
    assert res.code == 0
    rep = json.loads(res.output)
    assert rep["picard_order"] == 2 and rep["orthogonal_order"] == 2
    assert rep["picard_elements"] == [[[0, 0], [0, 0]], [[1, 1], [1, 1]]]
    assert rep["axioms_ok"] is True and rep["violations"] == []
    assert rep["classification"] == "nondegenerate"


def test_crossed_module_klein(form_file):
    path = form_file({"orders": [2, 2], "q_diag": ["0/1", "0/1"]})
    res = run_command(["crossed-module", "--input", path])
    assert res.code == 0 and json.loads(res.output)["axioms_ok"] is True


def test_audit_command_flags():
    res = run_command(["paper-check", "--catalog", "builtin"])
    assert res.code == 0
    rep = json.loads(res.output)
    flagged = sorted((r["form"], r["claim"].split(":")[0]) for r in rep["flagged"])
    assert flagged == [("svec", "Example (iii)"), ("z4ferm", "Example (iii)"),
                       ("z4tan", "Cokernel proposition")]
    assert all(r["status"] == "MATCH" for r in rep["rows"] if r["match"])
    table = run_command(["paper-check", "--catalog", "builtin", "--format", "table"])
    assert table.code == 0 and table.output.count("FLAGGED") == 3


def test_catalog_list():
    res = run_command(["catalog", "--list", "--format", "table"])
    assert res.code == 0
    lines = res.output.splitlines()
    assert len(lines) == 2 + 11
    assert "cube0" in res.output and " 8" in lines[-1]
    rows = json.loads(run_command(["catalog", "--list"]).output)
    assert {r["name"]: r["group_order"] for r in rows}["z2z4"] == 8


@pytest.mark.parametrize("cmd", [c for c in COMMANDS if c not in ("paper-check", "catalog")])
def test_every_command_runs_on_a_named_form(cmd):
    res = run_command([cmd, "--name", "z4tan"])
    assert res.code == 0, res.output
    json.loads(res.output)
    assert run_command([cmd, "--name", "z4tan", "--format", "csv"]).code == 0


def test_modcats_invertible_only():
    full = json.loads(run_command(["modcats", "--name", "klein0"]).output)
    inv = json.loads(run_command(["modcats", "--name", "klein0", "--invertible-only"]).output)
    assert full["count"] == 6 and inv["count"] == 2


def test_exit_codes(form_file, tmp_path):
    bad = form_file({"orders": [2], "q_diag": ["1/3"]})
    res = run_command(["picard", "--input", bad])
    assert res.code == 1 and "InvalidForm" in res.output
    assert run_command(["picard", "--input", str(tmp_path / "missing.json")]).code == 1
    assert run_command(["picard", "--name", "nonesuch"]).code == 1
    assert run_command(["picard", "--bogus"]).code == 2
    assert run_command(["frobnicate"]).code == 2
    assert run_command(["picard"]).code == 2
    assert run_command(["picard", "--name", "toric", "--threads", "0"]).code == 2
    big = form_file({"orders": [64], "q_diag": ["0"]})
    res = run_command(["picard", "--input", big])
    assert res.code == 1 and "SizeGuard" in res.output
    assert run_command(["picard", "--input", big, "--max-group-order", "64"]).code == 0


def test_env_guard(monkeypatch):
    monkeypatch.setenv("METRIC_GROUP_GUARD", "4")
    assert run_command(["picard", "--name", "z2z4"]).code == 1
    assert run_command(["picard", "--name", "toric"]).code == 0
    assert run_command(["picard", "--name", "z2z4", "--max-group-order", "8"]).code == 0
    monkeypatch.setenv("METRIC_GROUP_GUARD", "junk")
    assert run_command(["picard", "--name", "toric"]).code == 1


def test_output_is_independent_of_threads():
    for cmd in (["paper-check"], ["crossed-module", "--catalog", "builtin"],
                ["modcats", "--name", "cube0"]):
        one = run_command(cmd + ["--threads", "1"])
        two = run_command(cmd + ["--threads", "3"])
        assert one.code == two.code == 0
        assert one.output == two.output


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "premetric.cli", "picard", "--name", "svec"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["picard_order"] == 2
