"""
Unit tests for branching programs of formulas and the noncommutative identity test.
"""
import pytest

from monomial.algebra.group import GroupVector
from monomial.circuit.parser import parse_circuit
from monomial.services.abp import (
    Abp,
    AbpEdge,
    AbpGraph,
    expand_abp,
    formula_graph,
    formula_to_abp,
    noncommutative_expand,
    nonzero_coordinates,
    rs_identity_test,
)
from monomial.services.corpus import random_formula
from monomial.utils.errors import ResourceLimitError, UsageError

Y1, Y2, Y3 = 0, 1, 2

SINGLE = "input y1\noutput g1\n"
COMMUTATOR = """
input y1
input y2
input y2
input y1
const neg = 2
mul a = g1 g2
mul b = g3 g4
mul nb = neg b
add s = a nb
output s
"""
SUM_TIMES = "input y1\ninput y2\ninput y3\nadd s = g1 g2\nmul m = s g3\noutput m\n"
ZERO = "input y1\ninput y1\nconst neg = 2\nmul t = neg g2\nadd s = g1 t\noutput s\n"
EXPANDED_DIFFERENCE = """
input y1
input y2
input y3
add s = g1 g2
mul m = s g3
input y1
input y3
mul a = g6 g7
input y2
input y3
mul b = g9 g10
add ab = a b
const neg = 2
mul nab = neg ab
add total = m nab
output total
"""


def single_abp(text, p=3):
    abps = formula_to_abp(parse_circuit(text), p)
    assert len(abps) == 1
    return abps[0]


def test_single_variable():
    a = single_abp(SINGLE)
    assert expand_abp(a) == {(Y1,): 1}
    assert a.graph.max_word_length == 1
    assert rs_identity_test(a, 3)


def test_commutator_has_two_words():
    a = single_abp(COMMUTATOR)
    assert expand_abp(a) == {(Y1, Y2): 1, (Y2, Y1): 2}
    assert rs_identity_test(a, 3)


def test_sum_times_variable():
    a = single_abp(SUM_TIMES)
    assert expand_abp(a) == {(Y1, Y3): 1, (Y2, Y3): 1}


@pytest.mark.parametrize("text", [ZERO, EXPANDED_DIFFERENCE])
def test_zero_polynomials(text):
    a = single_abp(text)
    assert expand_abp(a) == {}
    assert noncommutative_expand(parse_circuit(text), 3) == {}
    assert not rs_identity_test(a, 3)


def test_degree_restriction():
    # y1*y2 + y3
    f = parse_circuit("input y1\ninput y2\nmul m = g1 g2\ninput y3\nadd s = m g4\noutput s\n")
    graph = formula_graph(f, 2)
    assert nonzero_coordinates(graph) == frozenset({0})
    assert rs_identity_test(Abp(graph, (), 2), 2)
    assert not rs_identity_test(Abp(graph, (), 3), 2)


def test_wrong_modulus_and_fan_out():
    with pytest.raises(UsageError):
        rs_identity_test(single_abp(SINGLE), 2)
    shared = parse_circuit("input y1\nadd s = g1 g1\noutput s\n")
    with pytest.raises(UsageError):
        formula_to_abp(shared, 3)


def test_state_larger_than_the_memory_budget():
    graph = formula_graph(parse_circuit(SUM_TIMES), 2)
    with pytest.raises(ResourceLimitError):
        nonzero_coordinates(graph, mem_mb=0)
    assert nonzero_coordinates(graph, mem_mb=1) == frozenset({0})


def test_edges_must_follow_node_order():
    with pytest.raises(UsageError):
        AbpGraph(2, 0, 2, (AbpEdge(1, 0),), 0, 1, 0)


def test_shifted_program_has_one_abp_per_coordinate():
    f = parse_circuit(SINGLE)
    vectors = [GroupVector.basis(3, 2, 0)]
    abps = formula_to_abp(f, 3, vectors)
    assert len(abps) == 9
    # y1 * (2[e1] + [0])
    words = {a.coordinate: expand_abp(a) for a in abps if expand_abp(a)}
    assert words == {(0, 0): {(Y1,): 1}, (1, 0): {(Y1,): 2}}


@pytest.mark.parametrize("p", [2, 3])
def test_rs_identity_test_matches_word_expansion(rng, p):
    for _ in range(150):
        f = random_formula(rng, n=3, gates=int(rng.integers(1, 7)), p=p)
        words = noncommutative_expand(f, p)
        a = formula_to_abp(f, p)[0]
        assert expand_abp(a) == words
        assert rs_identity_test(a, p) == bool(words)


@pytest.mark.parametrize("p", [2, 3])
def test_coordinates_match_path_enumeration(rng, p):
    for _ in range(60):
        f = random_formula(rng, n=3, gates=int(rng.integers(1, 6)), p=p)
        vectors = [GroupVector(tuple(int(c) for c in rng.integers(0, p, size=2)), p) for _ in range(f.n)]
        abps = formula_to_abp(f, p, vectors)
        graph = abps[0].graph
        expected = {j for j, a in enumerate(abps) if expand_abp(a)}
        assert nonzero_coordinates(graph) == expected
        degree = int(rng.integers(0, 4))
        restricted = {j for j, a in enumerate(abps) if expand_abp(Abp(graph, a.coordinate, degree))}
        assert nonzero_coordinates(graph, degree) == restricted
