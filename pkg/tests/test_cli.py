from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from pdres.cli import main, parse_spec, run
from pdres.errors import SpecError

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample(name):
    return str(SAMPLES / name)


def write(tmp_path, text, name="ring.spec"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_resolve_a1():
    code, rep = run(["resolve", sample("a1.spec")])
    assert code == 0 and rep["schema"] == 1
    res = rep["resolution"]
    assert res["closed_form"] and res["minimal"] and res["d_squared_zero"]
    assert [g["name"] for g in res["generators"]] == ["T_x", "T_y", "T_z", "S_1"]
    assert res["betti"]["values"] == [1, 3, 4, 4, 4, 4, 4]


def test_resolve_golod_example_reports_frontier():
    code, rep = run(["resolve", sample("x2_xy.spec")])
    res = rep["resolution"]
    assert code == 0 and not res["closed_form"]
    assert res["betti"]["values"] == [1, 2, 3, 5, 8, 13]
    assert {"name": "U_1", "degree": 3, "weight": 3, "differential": "x*S_2"} in res["generators"]


def test_ext_a1():
    code, rep = run(["ext", sample("a1.spec")])
    ext = rep["ext"]
    assert code == 0
    assert ext["generator_count"] == 3
    assert not ext["strictly_graded_commutative"]
    assert ext["dimensions"]["values"] == [1, 3, 4, 4, 4, 4, 4]


def test_ext_cubic_is_strictly_commutative():
    _, rep = run(["ext", sample("cubic.spec")])
    assert rep["ext"]["strictly_graded_commutative"]


def test_reconstruct_sample():
    code, rep = run(["reconstruct", sample("a1.lie")])
    rec = rep["reconstruction"]
    assert code == 0
    assert rec["ring"]["relations"] == ["x1^3 + x1^2 + x2*x3"]
    assert rec["roundtrip"] and rec["validation"]["valid"]


@pytest.mark.parametrize("suite", ["pd-axioms", "shuffle", "lifts", "appendix-c"])
def test_verify_suites_pass(suite):
    code, rep = run(["verify", "--suite", suite, "--seed", "3"])
    assert code == 0
    assert rep["verification"]["status"] == "pass"


def test_exit_code_spec_error(tmp_path, capsys):
    path = write(tmp_path, "field = QQ\nvars = x, y\nrel = x^2 + w\n")
    assert main(["resolve", path]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err and "column 13" in err


def test_exit_code_precondition(capsys):
    assert main(["ext", sample("x2_xy.spec")]) == 3
    assert "complete intersection" in capsys.readouterr().err


def test_exit_code_resource_cap(tmp_path, capsys):
    assert main(["resolve", sample("x2_xy.spec"), "--internal-cap", "1", "--json"]) == 4
    rep = json.loads(capsys.readouterr().out)
    assert rep["error"]["kind"] == "ResourceCapError"
    assert rep["error"]["degree"] == 1


def test_missing_file_is_a_spec_error():
    code, rep = run(["resolve", "/nonexistent/ring.spec"])
    assert code == 2 and rep["error"]["kind"] == "SpecError"


def test_json_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["ext", sample("e6.spec"), "--json"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert rep["schema"] == 1
    assert rep["command"]["command"] == "ext"


def test_text_output(capsys):
    assert main(["resolve", sample("dual_numbers.spec")]) == 0
    out = capsys.readouterr().out
    assert out.strip()


def test_spec_file_roundtrip():
    text = "field = Fp 5\nvars = x, y\nrel = x^2 + 6*y^3\nmax_degree = 4\n"
    spec = parse_spec(text)
    again = parse_spec(spec.to_text())
    assert again.to_text() == spec.to_text()
    assert again.max_degree == 4
    assert [str(r) for r in again.relations] == ["y^3 + x^2"]


@pytest.mark.parametrize(
    "text, line",
    [
        ("field = QQ\nvars = x\nbogus = 1\n", 3),
        ("field = Fp 4\nvars = x\n", 1),
        ("field = QQ\nvars = x\nrel = x + 1\n", 3),
        ("field = QQ\nvars = x\nmax_degree = two\n", 3),
    ],
)
def test_spec_parse_errors(text, line):
    with pytest.raises(SpecError) as e:
        parse_spec(text)
    assert e.value.line == line


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "pdres", "reconstruct", sample("zero.lie"), "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["reconstruction"]["ring"]["relations"] == ["x1^3"]
