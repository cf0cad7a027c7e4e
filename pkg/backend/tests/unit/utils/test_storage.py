"""
Unit tests for the storage service and the JSON encoder.
"""
import numpy as np
import orjson
import pytest

from monomial.applications.graph import Graph
from monomial.circuit.parser import parse_circuit
from monomial.schemas import TestReport
from monomial.utils.errors import SerializationError, UsageError
from monomial.utils.storage import dumps


def test_missing_input(storage, tmp_path):
    with pytest.raises(UsageError, match="cannot read"):
        storage.read_bytes(str(tmp_path / "absent.circ"))


def test_inputs_round_trip(storage, tmp_path):
    circuit = parse_circuit("input x1\ninput x2\nmul g3 = g1 g2\noutput g3\n")
    path = storage.save_circuit(circuit, str(tmp_path / "in" / "c.circ"))
    assert storage.load_circuit(path) == circuit

    graph = Graph(4, ((1, 2), (3, 4)))
    path = storage.save_graph(graph, str(tmp_path / "g.graph"))
    assert storage.load_graph(path).edges == graph.edges


def test_save_report(storage, tmp_path):
    report = TestReport(answer="yes", tester="rt_mlm", config={"seed": 5}, witness="x1*x2")
    path = storage.save_report(report)
    assert path.endswith("rt_mlm-5.json")
    saved = orjson.loads(open(path, "rb").read())
    assert saved["witness"] == "x1*x2"

    path = storage.save_report(TestReport(answer="no", tester="bb_test"))
    assert path.endswith("bb_test-noseed.json")

    explicit = storage.save_report(report, str(tmp_path / "out.json"))
    assert explicit == str(tmp_path / "out.json")


def test_unwritable_path(storage, tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("")
    with pytest.raises(SerializationError):
        storage.save_report(TestReport(answer="no", tester="bb_test"), str(blocker / "report.json"))


def test_dumps_is_canonical():
    data = dumps({"b": np.array([1, 2]), "a": {"z": 1, "y": None}})
    assert data.endswith(b"}\n")
    text = data.decode()
    assert text.index('"a"') < text.index('"b"')
    assert text.index('"y"') < text.index('"z"')
    assert '\n  "a": {' in text
    assert orjson.loads(data) == {"a": {"y": None, "z": 1}, "b": [1, 2]}


def test_reports_parse_back():
    report = TestReport(answer="no", tester="dt_mlm", trials=2, config={"p": 3, "k": 2},
                        stats={"colorings": 2, "examined": 2})
    assert TestReport.model_validate_json(report.to_json()) == report
