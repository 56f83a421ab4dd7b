import json
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from qglab.cli import main as cli
from qglab.cli.main import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERDICT, execute, run_command


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("qglab").joinpath("schemas/report.schema.json").read_text())


def test_nf_substitutes_q(capsys):
    assert run_command(["nf", "a a*", "--q", "1/2"]) == EXIT_OK
    assert capsys.readouterr().out == "1 - 1/4 g g*\n"


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["nf", "g a"], "q^-1 a g"),
        (["adjoint", "a g"], "q a* g*"),
        (["delta", "a"], "-q g* (x) g + a (x) a"),
        (["counit", "a + 2 g + 1/2"], "3/2"),
        (["antipode", "g"], "-q g"),
        (["haar", "g* g"], "1/(q**2 + 1)"),
        (["haar", "g* g", "--q", "1/2"], "4/5"),
        (["condexp", "g* g u + 3"], "(3) + (1/(q**2 + 1)) u^1"),
        (["invariant", "a + g g* + 1"], "1 + g g*"),
    ],
)
def test_symbolic_commands(capsys, argv, expected):
    assert run_command(argv) == EXIT_OK
    assert capsys.readouterr().out.strip() == expected


def test_usage_and_parse_errors(capsys):
    assert run_command(["nf", "a b"]) == EXIT_USAGE
    assert run_command(["nf", "u", "--algebra", "suq2"]) == EXIT_USAGE
    assert run_command(["frobnicate"]) == EXIT_USAGE
    assert run_command(["spectrum", "--q", "2"]) == EXIT_USAGE
    assert run_command(["fusion-lf", "--ring", "cyclic:6", "--gens", "9"]) == EXIT_USAGE
    capsys.readouterr()


def test_verdict_false_exit(capsys):
    argv = ["exp-thm31", "--q", "0.5", "--levels", "6", "--modes", "16", "--grid", "256", "--cheb-degree", "32", "--target", "gamma"]
    assert run_command(argv) == EXIT_VERDICT
    capsys.readouterr()


def test_numeric_failure_exit(monkeypatch, capsys):
    def boom(*a, **k):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setitem(cli.NUMERIC, "norm", boom)
    assert run_command(["norm", "a"]) == EXIT_NUMERIC
    assert "numeric failure" in capsys.readouterr().err


def test_fusion_example(capsys):
    code, rep, out = execute(["fusion-lf", "--ring", "product", "--gens", "(0,1)", "--cap", "10000"])
    assert code == EXIT_OK
    assert rep.metrics["result"] == "CapExceeded" and rep.verdict["notLocallyFinite"] is True
    capsys.readouterr()


def test_character_and_corepcheck(capsys):
    code, rep, _ = execute(["cor24", "--z", "(3/5 + 4/5 i)", "--w", "i"])
    assert code == EXIT_OK and rep.verdict["identity"]
    assert rep.per_item[0]["symbolic"] == "1 - g g* + q^2 g g*"
    code, rep, _ = execute(["corepcheck", "--corep", "fundamental x u x u^2"])
    assert code == EXIT_OK and rep.metrics["dim"] == 2
    assert execute(["cor24", "--z", "2"])[0] == EXIT_USAGE
    capsys.readouterr()


SMALL_RUNS = [
    ["nf", "a a*", "--format", "json"],
    ["delta", "g", "--format", "json"],
    ["haar", "g g*", "--format", "json"],
    ["corepcheck"],
    ["cor24"],
    ["spectrum", "--levels", "4", "--modes", "8", "--origin"],
    ["norm", "a u + g", "--levels", "4", "--modes", "8", "--theta", "1/8"],
    ["exp-thm31", "--levels", "6", "--modes", "16", "--grid", "256", "--cheb-degree", "32", "--threshold", "5"],
    ["exp-lemma44", "--levels", "6", "--modes", "16", "--cutoff", "4"],
    ["exp-thm46", "--levels", "4", "--suite-size", "2", "--min-size", "13"],
    ["exp-torus", "--min-size", "13", "--seed", "4"],
    ["fusion-lf", "--ring", "cyclic:6", "--gens", "2"],
]


@pytest.mark.parametrize("argv", SMALL_RUNS, ids=lambda a: a[0])
def test_reports_validate_and_are_deterministic(argv, schema, capsys):
    code1, rep1, out1 = execute(argv + ["--format", "json"] if "--format" not in argv else argv)
    code2, rep2, out2 = execute(argv + ["--format", "json"] if "--format" not in argv else argv)
    capsys.readouterr()
    assert code1 == EXIT_OK
    assert out1 == out2
    doc = json.loads(out1)
    jsonschema.validate(doc, schema)
    assert doc["determinismDigest"] == rep1.digest


def test_out_file_and_csv(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    assert run_command(["spectrum", "--levels", "2", "--modes", "3", "--format", "csv", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    lines = out.read_text().splitlines()
    assert lines[0] == "multiplicity,value" and len(lines) == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qglab", "nf", "a a*", "--q", "1/2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1 - 1/4 g g*\n"


def test_algebra_flag_is_case_insensitive(capsys):
    assert run_command(["nf", "w v", "--algebra", "Torus"]) == EXIT_OK
    assert capsys.readouterr().out == "zeta v w\n"
