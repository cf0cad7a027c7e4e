"""
Circuit Package

Arithmetic-circuit and structured-polynomial IR, text formats, evaluation and
the brute-force expansion oracle.
"""

from .evaluator import (
    GradedRing,
    GroupAlgebraRing,
    ScalarRing,
    augment_circuit,
    eval_augmented,
    eval_circuit,
    pad_degree,
)
from .expansion import degree_bound, expand_oracle, has_p_monomial_oracle, y_degree_bound
from .models import (
    Add,
    AugmentedCircuit,
    Circuit,
    CircuitBuilder,
    Const,
    ExpansionTable,
    FormulaFlag,
    Input,
    Monomial,
    Mul,
)
from .parser import parse_circuit, serialize_circuit
from .structured import Shape, StructuredPoly, parse_structured, serialize_structured, structured_to_circuit

__all__ = [
    "GradedRing",
    "GroupAlgebraRing",
    "ScalarRing",
    "augment_circuit",
    "eval_augmented",
    "eval_circuit",
    "pad_degree",
    "degree_bound",
    "expand_oracle",
    "has_p_monomial_oracle",
    "y_degree_bound",
    "Add",
    "AugmentedCircuit",
    "Circuit",
    "CircuitBuilder",
    "Const",
    "ExpansionTable",
    "FormulaFlag",
    "Input",
    "Monomial",
    "Mul",
    "parse_circuit",
    "serialize_circuit",
    "Shape",
    "StructuredPoly",
    "parse_structured",
    "serialize_structured",
    "structured_to_circuit",
]
