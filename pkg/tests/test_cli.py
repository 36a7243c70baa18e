import json
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

import ncsieve
from ncsieve.cli import run

SCHEMA = json.loads((Path(ncsieve.__file__).parent / "data" / "report.schema.json").read_text())


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--output", "machine")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_group_info(capsys):
    code, out, _ = call(capsys, "group-info", "--group", "E8")
    assert code == 0
    assert "2, 8, 12, 14, 18, 20, 24, 30" in out
    assert "reflections  120" in out
    code, doc = machine(capsys, "group-info", "--group", "E8")
    assert doc["degrees"] == [2, 8, 12, 14, 18, 20, 24, 30]
    assert doc["coxeter_number"] == 30 and doc["reflections"] == 120


def test_cat_eval(capsys):
    code, out, _ = call(capsys, "cat-eval", "--group", "G24", "--m", "3", "--action", "phi", "--p", "7")
    assert code == 0 and out.strip() == "8"
    code, doc = machine(capsys, "cat-eval", "--group", "E8", "--m", "1", "--action", "psi", "--p", "15")
    assert doc["value"] == "88"


def test_csp_verify_brute(capsys):
    code, out, err = call(capsys, "csp-verify", "--group", "A2", "--m", "2", "--action", "phi", "--mode", "brute")
    assert code == 0 and out.strip().endswith("PASS")
    assert "p=" in err  # progress goes to stderr
    code, doc = machine(capsys, "csp-verify", "--group", "A2", "--m", "2", "--mode", "brute", "--workers", "1")
    assert doc["pass"] and len(doc["rows"]) == 6
    assert [r["p"] for r in doc["rows"] if r["classification"]["handled_by"] != "transfer"] == [0, 1, 2, 3]


def test_csp_verify_failure_exit_code(capsys):
    code, doc = machine(capsys, "csp-verify", "--group", "E7", "--m", "2", "--mode", "brute", "--brute-bound", "10", "--workers", "1")
    assert code == 1 and not doc["pass"]


def test_csp_verify_solutions(capsys):
    code, doc = machine(capsys, "csp-verify", "--group", "G24", "--m", "3", "--solutions", "--workers", "1")
    assert code == 0
    inv = doc["inventories"]["7"]["inventory"]
    assert len(inv["solutions"]["1"]) == 7


def test_csp_verify_all(capsys):
    code, doc = machine(capsys, "csp-verify-all", "--group", "A3", "--action", "psi")
    assert code == 0 and doc["pass"]


def test_decomp(capsys):
    code, out, _ = call(capsys, "decomp", "--group", "A2", "--types", "A1,A1")
    assert code == 0 and out.strip() == "3"
    # s3 s4 s3 s5 is of type A2, s1 s2 of type A1^2
    code, out, _ = call(capsys, "decomp", "--group", "E8", "--types", "A1,A1", "--below", "[3,4,3,5]")
    assert out.strip() == "3"
    code, out, _ = call(capsys, "decomp", "--group", "E8", "--types", "A1,A1", "--below", "[1,2]")
    assert out.strip() == "2"
    code, _, err = call(capsys, "decomp", "--group", "A3", "--types", "A1", "--below", "[3,2,1]")
    assert code == 2 and "below" in err


def test_solve_equation(capsys):
    code, out, _ = call(
        capsys, "solve-equation", "--group", "G24", "--exponents", "0,2,4", "--lengths", "1", "--relation", "equals-c", "--centralizer", "7"
    )
    assert code == 0 and "length 1: 7 solutions" in out
    code, doc = machine(capsys, "solve-equation", "--group", "E8", "--m", "2", "--p", "15", "--lengths", "1,2", "--factors", "2")
    assert doc["counts"] == {"1": 45, "2": 250}
    assert doc["compositions"]["1,1"] == 600


def test_nc_enum(capsys):
    code, doc = machine(capsys, "nc-enum", "--group", "H3", "--solutions")
    assert doc["nc_size"] == 32
    assert [s["size"] for s in doc["strata"]] == [1, 15, 15, 1]
    assert len(doc["strata"][1]["elements"]) == 15


def test_usage_errors(capsys):
    assert call(capsys, "cat-eval", "--group", "A2", "--m", "1", "--p", "3")[0] == 2
    assert call(capsys, "cat-eval", "--group", "A2", "--m", "0", "--p", "0")[0] == 2
    assert call(capsys, "group-info", "--group", "Q9")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "solve-equation", "--group", "A2")[0] == 2
    assert call(capsys, "decomp", "--group", "A2", "--types", "X7")[0] == 2


def test_data_dir(tmp_path, capsys):
    (tmp_path / "groups").mkdir()
    src = Path(ncsieve.__file__).parent / "data" / "groups" / "A2.json"
    shutil.copy(src, tmp_path / "groups" / "A2.json")
    assert call(capsys, "group-info", "--group", "A2", "--data-dir", str(tmp_path))[0] == 0
    assert call(capsys, "group-info", "--group", "A3", "--data-dir", str(tmp_path))[0] == 2


def test_machine_output_is_byte_stable():
    cmd = [sys.executable, "-m", "ncsieve.cli", "csp-verify", "--group", "H3", "--m", "2", "--action", "psi", "--output", "machine"]
    first = subprocess.run(cmd + ["--workers", "1"], capture_output=True, check=True).stdout
    second = subprocess.run(cmd + ["--workers", "3"], capture_output=True, check=True).stdout
    assert first == second
    assert b"." not in first.replace(b"..", b"")  # no decimal points anywhere


def test_decomp_variant(capsys):
    _, doc = machine(capsys, "decomp", "--group", "A3", "--types", "A2,A1")
    assert doc["variant"] == "minimal" and doc["value"] == "4"
    _, doc = machine(capsys, "decomp", "--group", "A3", "--types", "A1,A1")
    assert doc["variant"] == "prefix" and doc["value"] == "16"
