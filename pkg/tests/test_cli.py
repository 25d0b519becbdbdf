from __future__ import annotations

import json
import pathlib
import shutil
import subprocess
import sys

import pytest

from slicekit.cli import main
from slicekit.fixtures import NAMES, fixture_source

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"

FIGURE_2 = (
    "int d, terminate_var, product, sum, counter;\n"
    "terminate_var = read();\n"
    "sum = 0;\n"
    "for (counter = 1; counter <= terminate_var; counter = counter + 1) {\n"
    "    sum = sum + counter;\n"
    "}\n"
    "print(sum);\n"
)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fig(name):
    return FIX / f"{name}.mj"


@pytest.mark.parametrize("name", NAMES)
def test_checked_in_fixtures_match_package_data(name):
    assert fig(name).read_text() == fixture_source(name)


def test_static_source_is_figure_2(capsys):
    code, out, _ = run(capsys, fig("fig1"), "--method", "static", "--at", 8, "--var", "sum", "--format", "source")
    assert code == 0 and out == FIGURE_2


def test_dynamic_labels(capsys):
    code, out, _ = run(
        capsys, fig("fig6"), "--method", "dynamic", "--at", 9, "--occurrence", 1,
        "--var", "x", "--input", "2", "--format", "labels",
    )
    assert code == 0 and out == "1 2 3 4 5 6 8 9\n"


def test_simultaneous_json(capsys):
    code, out, _ = run(
        capsys, fig("fig9"), "--method", "simultaneous", "--at", 36, "--var", "sum",
        "--input", "0,0,2,2", "--input", "0,1,2,2", "--format", "json",
    )
    report = json.loads(out)
    assert code == 0
    assert report["labels"] == [1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 15, 18, 19, 20, 25, 26, 27, 30, 31, 36]
    assert report["fell_back"] is False and report["exhausted_reads"] == 1
    assert report["criterion"]["inputs"] == [[0, 0, 2, 2], [0, 1, 2, 2]]
    assert any("32" in note for note in report["discrepancy_notes"])


def test_conditioned_fix(capsys):
    code, out, _ = run(
        capsys, fig("fig11"), "--method", "conditioned", "--fix", "n=1", "--at", 14,
        "--var", "sum", "--format", "json",
    )
    report = json.loads(out)
    assert code == 0 and report["labels"] == [1, 2, 3, 4, 6, 7, 14]
    assert report["criterion"]["fixed"] == {"n": 1}
    assert report["discrepancy_notes"]


def test_forward_and_amorphous(capsys):
    code, out, _ = run(capsys, fig("fig3"), "--method", "forward", "--at", 4, "--var", "sum", "--format", "labels")
    assert code == 0 and out == "4 6 8 9 11\n"
    code, out, _ = run(capsys, fig("fig13"), "--method", "amorphous", "--at", 7, "--var", "average")
    assert code == 0 and "average = a[24] / 25;\nprint(average);\n" in out


def test_json_schema_is_stable(capsys):
    argv = (fig("fig1"), "--method", "static", "--at", 8, "--var", "sum", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    report = json.loads(first)
    assert list(report) == [
        "technique", "criterion", "labels", "statement_texts", "slice_size",
        "program_size", "fell_back", "exhausted_reads", "discrepancy_notes",
    ]
    assert report["slice_size"] == len(report["labels"]) == len(report["statement_texts"])
    assert report["labels"] == sorted(report["labels"])
    assert report["program_size"] == 9


@pytest.mark.parametrize(
    "argv",
    [
        ("fig1", "--method", "static", "--at", 8, "--var", "sum"),
        ("fig6", "--method", "dynamic", "--at", 9, "--var", "x", "--input", "3"),
        ("fig9", "--method", "simultaneous", "--at", 36, "--var", "sum", "--input", "1,0,3,2,0"),
        ("fig11", "--method", "conditioned", "--at", 14, "--var", "sum", "--fix", "n=-1"),
        ("fig13", "--method", "amorphous", "--at", 6, "--var", "biggest"),
        ("fig3", "--method", "forward", "--at", 2, "--var", "terminate_var"),
    ],
)
def test_labels_agree_with_json(capsys, argv):
    name, *rest = argv
    _, labels, _ = run(capsys, fig(name), *rest, "--format", "labels")
    _, text, _ = run(capsys, fig(name), *rest, "--format", "json")
    assert [int(x) for x in labels.split()] == json.loads(text)["labels"]


def test_graph_output(capsys):
    code, out, _ = run(capsys, fig("fig1"), "--method", "pdg")
    assert code == 0 and out.startswith("digraph pdg {")
    code, out, _ = run(capsys, fig("fig6"), "--method", "cfg")
    assert code == 0 and out.startswith("digraph cfg {")
    code, out, _ = run(capsys, fig("fig1"), "--method", "static", "--at", 8, "--var", "sum", "--format", "dot")
    assert code == 0 and "digraph" in out


def test_run_and_cohesion(capsys):
    code, out, _ = run(capsys, fig("fig6"), "--method", "run", "--input", "2")
    assert (code, out) == (0, "17\n")
    code, out, _ = run(capsys, fig("fig1"), "--method", "run", "--input", "3", "--format", "json")
    assert json.loads(out) == {"outputs": [6, 6], "exhausted_reads": 0}
    code, out, _ = run(capsys, fig("fig1"), "--method", "cohesion", "--outputs", "sum,product")
    assert code == 0
    assert "tightness: 1/3 (0.3333)" in out and "coverage: 2/3" in out and "overlap: 1/2" in out
    code, out, _ = run(
        capsys, fig("fig1"), "--method", "cohesion", "--outputs", "sum", "--outputs", "product",
        "--format", "json",
    )
    assert json.loads(out)["overlap"] == "1/2"


@pytest.mark.parametrize(
    "argv",
    [
        ("--method", "static", "--var", "sum"),
        ("--method", "static", "--at", 8),
        ("--method", "static", "--at", 8, "--var", "sum", "--occurrence", 1),
        ("--method", "dynamic", "--at", 8, "--var", "sum", "--occurrence", 0),
        ("--method", "static", "--at", 8, "--var", "sum", "--fix", "n=1"),
        ("--method", "conditioned", "--at", 8, "--var", "sum", "--fix", "n"),
        ("--method", "simultaneous", "--at", 8, "--var", "sum"),
        ("--method", "cohesion"),
        ("--method", "pdg", "--format", "json"),
        ("--method", "run", "--input", "x,y"),
        ("--method", "bogus"),
        (),
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, fig("fig1"), *argv)
    assert code == 1 and err


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "missing.mj", "--method", "static", "--at", 1, "--var", "x")
    assert code == 1 and "missing.mj" in err


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.mj"
    bad.write_text("int x;\nx = ;\n")
    code, _, err = run(capsys, bad, "--method", "run")
    assert code == 2 and f"{bad}:2:5:" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("fig6", "--method", "dynamic", "--at", 9, "--occurrence", 2, "--var", "x", "--input", "2"),
        ("fig1", "--method", "static", "--at", 99, "--var", "sum"),
        ("fig1", "--method", "static", "--at", 8, "--var", "nope"),
        ("fig6", "--method", "simultaneous", "--at", 6, "--var", "x", "--input", "0"),
        ("fig1", "--method", "cohesion", "--outputs", "d"),
    ],
)
def test_analysis_errors_exit_3(capsys, argv):
    name, *rest = argv
    code, _, err = run(capsys, fig(name), *rest)
    assert code == 3 and err


def test_runtime_error_exits_3(capsys, tmp_path):
    prog = tmp_path / "div.mj"
    prog.write_text("int x;\nx = read();\nprint(10 / x);\n")
    code, _, err = run(capsys, prog, "--method", "run", "--input", "0")
    assert code == 3 and "DivisionByZero" in err


def test_step_limit_from_environment(capsys, tmp_path, monkeypatch):
    prog = tmp_path / "loop.mj"
    prog.write_text("int x;\nwhile (1) { x = x + 1; }\n")
    monkeypatch.setenv("SLICEKIT_STEP_LIMIT", "1000")
    code, _, err = run(capsys, prog, "--method", "run")
    assert code == 3 and "StepLimitExceeded" in err


def test_console_script():
    exe = shutil.which("slicekit")
    cmd = [exe] if exe else [sys.executable, "-m", "slicekit.cli"]
    done = subprocess.run(
        cmd + [str(fig("fig6")), "--method", "dynamic", "--at", "9", "--occurrence", "1",
               "--var", "x", "--input", "2", "--format", "labels"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0 and done.stdout == "1 2 3 4 5 6 8 9\n"
