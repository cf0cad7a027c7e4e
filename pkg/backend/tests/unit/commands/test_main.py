"""
Unit tests for the command-line entry point: exit codes, report formats and
the subcommand handlers end to end.
"""
import json
import os

import pytest

from monomial.main import build_parser, main

X1X2 = "input x1\ninput x2\nmul g3 = g1 g2\noutput g3\n"
SHARED = "input x1\ninput x2\nadd g3 = g1 g2\nmul g4 = g3 g3\noutput g4\n"
TRIANGLE = "3\n1 2\n2 3\n1 3\n"
PRODUCT = "x4 + x5\n---\nx1 + x2 + x3\n"
SQUARES = "x1 + x1\n---\nx1 + x1 + x1\n"
PRODUCT6 = ("input x1\ninput x2\ninput x3\ninput x4\ninput x5\ninput x6\n"
            "mul a = g1 g2\nmul b = a g3\nmul c = b g4\nmul d = c g5\nmul e = d g6\noutput e\n")


# --- test-circuit -------------------------------------------------------------

def test_rand_yes_exits_zero(write, capsys):
    path = write("x1x2.circ", X1X2)
    assert main(["test-circuit", "--p", "2", "--k", "2", "--mode", "rand", "--seed", "1", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith("answer: yes\ntester: rt_mlm\n")
    assert "seed: 1\n" in out


def test_det_no_exits_one(write, capsys):
    path = write("square.circ", "input x1\ninput x1\nmul g3 = g1 g2\noutput g3\n")
    assert main(["test-circuit", "--k", "2", "--mode", "det", path]) == 1
    assert capsys.readouterr().out.startswith("answer: no\n")


def test_det_on_a_shared_gate_is_an_error(write, capsys):
    path = write("shared.circ", SHARED)
    assert main(["test-circuit", "--k", "2", "--mode", "det", path]) == 2
    assert "error: " in capsys.readouterr().err


def test_det_over_the_memory_budget_exits_two(write, capsys):
    path = write("prod6.circ", PRODUCT6)
    assert main(["test-circuit", "--mode", "det", "--mem-mb", "1", "--p", "7", "--k", "6", path]) == 2
    assert "error: " in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["test-circuit", "--mode", "rand"],
    ["test-circuit", "--k", "2", "--p", "4"],
    ["test-circuit", "--k", "0"],
    ["test-circuit", "--k", "2", "--mode", "structured-bb"],
    ["test-circuit", "--k", "2", "--trials", "0"],
])
def test_invalid_configurations_exit_two(write, capsys, argv):
    path = write("x1x2.circ", X1X2)
    assert main(argv + [path]) == 2
    assert "error: " in capsys.readouterr().err


def test_malformed_and_missing_files_exit_two(write, tmp_path, capsys):
    path = write("bad.circ", "input x1\nmul g2 = g1 g9\noutput g2\n")
    assert main(["test-circuit", "--k", "2", path]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["test-circuit", "--k", "2", str(tmp_path / "absent.circ")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_degree_below_k(write, capsys):
    path = write("x1x2.circ", X1X2)
    assert main(["test-circuit", "--k", "3", "--seed", "1", path]) == 2
    capsys.readouterr()
    # padding multiplies in a fresh variable, so x1*x2*z is a 3-monomial
    assert main(["test-circuit", "--k", "3", "--pad", "--seed", "1", path]) == 0


def test_oracle_mode_reports_every_verdict(write, capsys):
    path = write("x1x2.circ", X1X2)
    assert main(["test-circuit", "--k", "2", "--mode", "oracle", "--seed", "4", "--format", "json", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["tester"] == "expand_oracle"
    assert report["witness"] == "x1*x2"
    assert report["stats"]["testers"] == {"rt_mlm": "yes", "dt_mlm": "yes"}
    assert report["stats"]["agree"] is True


def test_oracle_subcommand_and_report_file(write, tmp_path, capsys):
    path = write("square.circ", "input x1\nmul g2 = g1 g1\noutput g2\n")
    out = tmp_path / "reports" / "square.json"
    assert main(["oracle", "--p", "3", "--k", "2", "-o", str(out), path]) == 0
    assert "witness: x1^2" in capsys.readouterr().out
    saved = json.loads(out.read_bytes())
    assert saved["answer"] == "yes"
    assert saved["config"] == {"p": 3, "k": 2}


def test_json_reports_repeat_with_the_same_seed(write, capsys):
    path = write("x1x2.circ", X1X2)
    runs = []
    for _ in range(2):
        assert main(["test-circuit", "--p", "3", "--k", "2", "--seed", "7", "--format", "json", path]) == 0
        report = json.loads(capsys.readouterr().out)
        report.pop("elapsed")
        for outcome in report["per_trial"]:
            outcome.pop("micros")
        runs.append(report)
    assert runs[0] == runs[1]
    assert runs[0]["config"]["seed"] == 7


# --- kpath and kclique-gen ------------------------------------------------------

def test_kpath_triangle(write, capsys):
    path = write("triangle.graph", TRIANGLE)
    assert main(["kpath", "--k", "3", "--trials", "40", "--seed", "1", path]) == 0
    out = capsys.readouterr().out
    assert "path_vertices: 3" in out
    assert main(["kpath", "--k", "5", "--seed", "1", path]) == 1


def test_kpath_modes(write, capsys):
    path = write("triangle.graph", TRIANGLE)
    assert main(["kpath", "--hamiltonian", "--mode", "oracle", "--format", "json", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["tester"] == "path_oracle"
    assert report["stats"]["path_vertices"] == 3
    assert main(["kpath", "--k", "3", "--mode", "det", path]) == 2
    assert main(["kpath", "--k", "3", "--p", "3", path]) == 2
    assert "c < p <= 2c" in capsys.readouterr().err


def test_kpath_without_walks(write, capsys):
    path = write("lonely.graph", "2\n")
    assert main(["kpath", "--k", "2", path]) == 1
    assert "reason: no walk on k vertices" in capsys.readouterr().out


def test_kclique_gen(write, tmp_path, capsys):
    path = write("triangle.graph", TRIANGLE)
    assert main(["kclique-gen", "--k", "3", path]) == 0
    assert capsys.readouterr().out.startswith("input x1_2\n")

    circuit = str(tmp_path / "clique.circ")
    assert main(["kclique-gen", "--k", "3", "-o", circuit, path]) == 0
    assert "edge variables" in capsys.readouterr().err
    assert os.path.exists(circuit)
    assert main(["oracle", "--p", "101", "--k", "3", circuit]) == 0


# --- test-structured --------------------------------------------------------------

@pytest.mark.parametrize("mode", ["structured-bb", "structured-enum", "structured-rand", "oracle"])
def test_structured_modes(write, capsys, mode):
    yes = write("yes.poly", PRODUCT)
    no = write("no.poly", SQUARES)
    assert main(["test-structured", "--mode", mode, "--seed", "2", no]) == 1
    if mode != "structured-rand":
        assert main(["test-structured", "--mode", mode, yes]) == 0
    capsys.readouterr()


def test_structured_reps(write, capsys):
    path = write("yes.poly", PRODUCT)
    assert main(["test-structured", "--mode", "structured-rand", "--reps", "auto", "--seed", "3",
                 "--format", "json", path]) in (0, 1)
    assert json.loads(capsys.readouterr().out)["config"]["reps"] == 1
    assert main(["test-structured", "--mode", "structured-rand", "--reps", "zero", path]) == 2
    assert main(["test-structured", "--mode", "structured-rand", "--reps", "²", path]) == 2


def test_pisigma(write, capsys):
    path = write("square.poly", "(x1)(x1)\n")
    assert main(["test-structured", "--mode", "pisigma", "--c", "3", path]) == 0
    assert main(["test-structured", "--mode", "pisigma", "--c", "2", path]) == 1
    assert main(["test-structured", "--mode", "pisigma", path]) == 2
    assert "pisigma mode requires --c" in capsys.readouterr().err


def test_malformed_structured_file(write, capsys):
    path = write("bad.poly", "x1 + \n")
    assert main(["test-structured", path]) == 2
    assert "line 1" in capsys.readouterr().err


# --- bench -----------------------------------------------------------------------

def test_bench_generate_then_run(tmp_path, capsys):
    corpus = str(tmp_path / "corpus")
    assert main(["bench", "--generate", "2", "--seed", "5", corpus]) == 0
    assert "wrote 6 files" in capsys.readouterr().err
    assert len(os.listdir(corpus)) == 6

    table = tmp_path / "bench.json"
    assert main(["bench", "--k", "3", "--seed", "5", "-o", str(table), corpus]) == 0
    report = json.loads(table.read_bytes())
    testers = {record["tester"] for record in report["records"]}
    assert {"rt_mlm", "bb_test", "narrow_test", "enum_test"} <= testers
    assert all(record["error"] is None for record in report["records"])
    assert report["config"]["max_k"] == 3


def test_parser_requires_a_subcommand(capsys):
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args([])
    assert excinfo.value.code == 2
    capsys.readouterr()
