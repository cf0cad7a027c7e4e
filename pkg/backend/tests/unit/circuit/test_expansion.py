"""
Unit tests for the expansion oracle, degree bounds and structured polynomials.
"""
import pytest

from monomial.circuit.expansion import degree_bound, expand_oracle, has_p_monomial_oracle
from monomial.circuit.models import CircuitBuilder, ExpansionTable, Monomial
from monomial.circuit.parser import parse_circuit
from monomial.circuit.structured import (
    Shape,
    parse_structured,
    serialize_structured,
    structured_from_clauses,
    structured_to_circuit,
)
from monomial.utils.errors import CircuitSyntaxError, ResourceLimitError, SerializationError, ShapeError

SQUARE = "input x1\ninput x2\nadd s = g1 g2\nmul sq = s s\noutput sq\n"

X1, X2, X3 = 0, 1, 2


def test_square_mod_2():
    tbl = expand_oracle(parse_circuit(SQUARE), 2)
    assert dict(tbl.entries) == {Monomial.of(X1, X1): 1, Monomial.of(X2, X2): 1}


def test_square_mod_3():
    tbl = expand_oracle(parse_circuit(SQUARE), 3)
    assert dict(tbl.entries) == {Monomial.of(X1, X1): 1, Monomial.of(X1, X2): 2, Monomial.of(X2, X2): 1}


def test_constant_one():
    tbl = expand_oracle(parse_circuit("const one = 1\noutput one\n"), 5)
    assert dict(tbl.entries) == {Monomial(): 1}
    assert expand_oracle(parse_circuit("const z = 5\noutput z\n"), 5).entries == {}


def test_cap_and_missing_output():
    b = CircuitBuilder([f"x{i}" for i in range(1, 7)])
    s = b.add(*(b.input(f"x{i}") for i in range(1, 7)))
    cube = b.build(b.mul(b.mul(s, s), s))
    with pytest.raises(ResourceLimitError):
        expand_oracle(cube, 101, cap=20)
    assert len(expand_oracle(cube, 101)) == 56
    with pytest.raises(SerializationError):
        expand_oracle(parse_circuit("input x\n"), 2)


def test_has_p_monomial_oracle():
    x1x2 = ExpansionTable({Monomial.of(X1, X2): 1}, 2)
    assert has_p_monomial_oracle(x1x2, 2, 2) == (True, Monomial.of(X1, X2))
    square = ExpansionTable({Monomial.of(X1, X1): 1}, 3)
    assert has_p_monomial_oracle(ExpansionTable({Monomial.of(X1, X1): 1}, 2), 2, 2) == (False, None)
    assert has_p_monomial_oracle(square, 3, 2) == (True, Monomial.of(X1, X1))
    assert has_p_monomial_oracle(square, 3, 1) == (False, None)


def test_expansion_table_drops_zero_coefficients():
    tbl = ExpansionTable({Monomial.of(X1): 3, Monomial.of(X2): 4}, 3)
    assert dict(tbl.entries) == {Monomial.of(X2): 1}
    assert tbl[Monomial.of(X1)] == 0


def test_monomial_predicates():
    m = Monomial.of(X1, X1, X3)
    assert m.degree == 3
    assert not m.is_multilinear
    assert m.is_c_monomial(3) and not m.is_c_monomial(2)
    assert m.format(["a", "b", "c"]) == "a^2*c"
    assert Monomial().format() == "1"
    assert Monomial.of(X1) * Monomial.of(X1) == Monomial.of(X1, X1)


def test_degree_bound():
    assert degree_bound(parse_circuit("input x1\ninput x2\nmul g3 = g1 g2\noutput g3\n")) == 2
    assert degree_bound(parse_circuit(SQUARE)) == 2
    assert degree_bound(parse_circuit("const c = 3\ninput x\nadd s = c x\noutput s\n")) == 1


# --- structured polynomials ------------------------------------------------

def test_parse_pi_sigma():
    sp = parse_structured("(x1 + x2)(x1 + x3)")
    assert sp.shape == Shape.PI_SIGMA
    assert (sp.m, sp.s, sp.t, sp.k) == (2, 2, 1, 0)


def test_structured_expansion():
    sp = parse_structured("(x1 + x2)(x1 + x3)")
    tbl = expand_oracle(structured_to_circuit(sp), 3)
    x1, x2, x3 = (sp.variables.index(v) for v in ("x1", "x2", "x3"))
    assert dict(tbl.entries) == {
        Monomial.of(x1, x1): 1,
        Monomial.of(x1, x3): 1,
        Monomial.of(x1, x2): 1,
        Monomial.of(x2, x3): 1,
    }


def test_parse_pi_sigma_pi():
    sp = parse_structured("(x1·x2 + x3)")
    assert sp.shape == Shape.PI_SIGMA_PI
    assert sp.t == 2
    sp = parse_structured("x1^2*x2 + x3\nx2 + x3\n")
    assert sp.m == 2 and sp.t == 3


def test_product_form_round_trip():
    text = "x1*x2 + x3\nx4\n---\nx1 + x2 + x5\nx3 + x4\n"
    sp = parse_structured(text)
    assert sp.shape == Shape.PRODUCT
    assert (sp.m, sp.k) == (2, 2)
    assert serialize_structured(sp).decode() == text


def test_shape_violations():
    with pytest.raises(ShapeError):
        parse_structured("x1 + x2 + x3 + x4", s=3)
    with pytest.raises(ShapeError):
        parse_structured("x1*x2*x3 + x4", t=2)
    with pytest.raises(ShapeError):
        parse_structured("x1\n---\nx1 + x2 + x3 + x4\n")
    with pytest.raises(ShapeError):
        parse_structured("x1\n---\nx1*x2\n")
    with pytest.raises(ShapeError):
        parse_structured("x1*x2", shape=Shape.PI_SIGMA)


@pytest.mark.parametrize("text,line", [
    ("x1 + x2\nx1 + + x3\n", 2),
    ("x1 + x2\n(x1 + x3\n", 2),
    ("x1\n---\nx2\n---\nx3\n", 4),
    ("x1 + 3x2\n", 1),
])
def test_structured_syntax_errors(text, line):
    with pytest.raises(CircuitSyntaxError) as excinfo:
        parse_structured(text)
    assert excinfo.value.line == line


def test_structured_from_clauses_infers_shape():
    sp = structured_from_clauses([[Monomial.of(0), Monomial.of(1)]], ["a", "b"])
    assert sp.shape == Shape.PI_SIGMA
    sp = structured_from_clauses([[Monomial.of(0, 1)]], ["a", "b"], [[Monomial.of(0)]])
    assert sp.shape == Shape.PRODUCT
    with pytest.raises(ShapeError):
        structured_from_clauses([[]], ["a"])
