"""
Unit tests for the circuit text format.
"""
import pytest

from monomial.circuit.models import Add, Circuit, FormulaFlag, Input, Mul
from monomial.circuit.parser import parse_circuit, serialize_circuit
from monomial.utils.errors import CircuitSyntaxError, MonomialError, SerializationError

X1X2 = "input x1\ninput x2\nmul g3 = g1 g2\noutput g3\n"


def test_parse_product():
    c = parse_circuit(X1X2)
    assert c.size == 3
    assert c.n == 2
    assert c.variables == ("x1", "x2")
    assert c.nodes[2] == Mul(0, 1)
    assert c.output == 2
    assert c.lines == (1, 2, 3)


def test_serialize_is_canonical():
    assert serialize_circuit(parse_circuit(X1X2)).decode() == X1X2


def test_named_gates_comments_and_forward_references():
    text = """
    # (a + b) * a with the output declared first
    output top
    mul top = s a
    add s = a b   # sum
    input a
    input b
    """
    c = parse_circuit(text)
    assert c.variables == ("a", "b")
    assert isinstance(c.nodes[c.output], Mul)
    assert any(isinstance(g, Add) for g in c.nodes)
    again = parse_circuit(serialize_circuit(c))
    assert again.nodes == c.nodes
    assert serialize_circuit(again) == serialize_circuit(c)


def test_repeated_inputs_share_a_variable():
    c = parse_circuit("input x\ninput x\nmul g3 = g1 g2\noutput g3\n")
    assert c.n == 1
    assert c.nodes[0] == Input(0) and c.nodes[1] == Input(0)
    assert c.is_formula
    assert c.formula_flag() == FormulaFlag(True)


def test_constants_and_wide_adds():
    c = parse_circuit("input x\nconst two = 2\nadd s = x two x\noutput s\n")
    assert c.nodes[2] == Add((0, 1, 0))


@pytest.mark.parametrize("text,fragment,line", [
    ("input x1\nmul g2 = g1 g9\noutput g2\n", "undefined 'g9'", 2),
    ("input x1\nmul g2 = g1\noutput g2\n", "exactly 2 inputs", 2),
    ("input x1\nmul g2 = g1 g1 g1\noutput g2\n", "exactly 2 inputs", 2),
    ("input x1\nadd a = b x1\nadd b = a x1\noutput a\n", "cycle", 2),
    ("input x1\nfoo g2 = g1\n", "unknown statement", 2),
    ("input x1\nconst c = two\noutput c\n", "integer literal", 2),
    ("input x1\noutput g1\noutput g1\n", "multiple output", 3),
    ("input x1\nadd g2 =\noutput g2\n", "at least one input", 2),
    ("input x1\nadd x1 = g1\noutput g2\n", "already defined", 2),
    ("input x1\nmul g5 = g1 g1\n", "positional alias", 2),
])
def test_syntax_errors_carry_locations(text, fragment, line):
    with pytest.raises(CircuitSyntaxError) as excinfo:
        parse_circuit(text)
    assert fragment in str(excinfo.value)
    assert excinfo.value.line == line


def test_invalid_utf8():
    with pytest.raises(CircuitSyntaxError):
        parse_circuit(b"input x\xff\n")


def test_serialize_without_output():
    c = parse_circuit("input x1\n")
    assert c.output is None
    with pytest.raises(SerializationError):
        serialize_circuit(c)


def test_structural_validation():
    from monomial.utils.errors import UsageError
    with pytest.raises(UsageError):
        Circuit((Input(0), Mul(0, 2)), 1, ("x",))
    with pytest.raises(UsageError):
        Circuit((Input(1),), 0, ("x",))
    with pytest.raises(UsageError):
        Circuit((Add(()),), 0, ())


def test_parser_never_crashes(rng):
    """Token soup and raw bytes either parse or raise an engine error"""
    vocabulary = ["input", "const", "add", "mul", "output", "=", "g1", "g2", "g3", "g0", "x", "y",
                  "1", "-3", "#", "(", "\t", "g12", "x'", "+"]
    for _ in range(500):
        lines = []
        for _ in range(int(rng.integers(1, 6))):
            words = rng.choice(vocabulary, size=int(rng.integers(1, 6)))
            lines.append(" ".join(str(w) for w in words))
        text = "\n".join(lines)
        try:
            assert isinstance(parse_circuit(text), Circuit)
        except MonomialError:
            pass
    for _ in range(200):
        blob = bytes(int(b) for b in rng.integers(0, 256, size=int(rng.integers(0, 40))))
        try:
            parse_circuit(blob)
        except MonomialError:
            pass
