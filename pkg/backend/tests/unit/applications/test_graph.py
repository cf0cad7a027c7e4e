"""
Unit tests for the graph model and its text format.
"""
import pytest

from monomial.applications.graph import Graph, parse_graph, serialize_graph
from monomial.utils.errors import CircuitSyntaxError, UsageError

TRIANGLE = "3\n1 2\n2 3\n1 3\n"


def test_parse_triangle():
    g = parse_graph(TRIANGLE)
    assert g.m == 3
    assert g.edges == ((1, 2), (2, 3), (1, 3))
    assert g.neighbors(1) == (2, 3)
    assert g.has_edge(3, 1)
    assert g.sorted_edges() == ((1, 2), (1, 3), (2, 3))


def test_round_trip_is_bit_exact():
    assert serialize_graph(parse_graph(TRIANGLE)).decode() == TRIANGLE
    text = "5\n4 1\n2 5\n"
    assert serialize_graph(parse_graph(text)).decode() == text


def test_comments_and_isolated_vertices():
    g = parse_graph("# a lonely vertex\n1\n")
    assert g.m == 1 and g.edges == ()
    assert g.neighbors(1) == ()


@pytest.mark.parametrize("text,line", [
    ("3\n1 1\n", 2),
    ("3\n1 4\n", 2),
    ("3\n1 2\n2 1\n", 3),
    ("3\n1 2 3\n", 2),
    ("three\n", 1),
    ("3\n1 x\n", 2),
    ("²\n", 1),
    ("3\n1 ³\n", 2),
    ("3\n① 2\n", 2),
])
def test_malformed_graphs(text, line):
    with pytest.raises(CircuitSyntaxError) as excinfo:
        parse_graph(text)
    assert excinfo.value.line == line


def test_empty_file():
    with pytest.raises(CircuitSyntaxError):
        parse_graph("")
    with pytest.raises(CircuitSyntaxError):
        parse_graph(b"\xff")


def test_graph_invariants():
    with pytest.raises(UsageError):
        Graph(2, ((1, 1),))
    with pytest.raises(UsageError):
        Graph(2, ((1, 3),))
    with pytest.raises(UsageError):
        Graph(3, ((1, 2), (2, 1)))
