"""
Structured Polynomial Module

Clause products: Pi Sigma, Pi Sigma Pi, and the product form
(Pi Sigma Pi) x (Pi Sigma) separated by a `---` line.

File format: one clause per line, terms joined by `+`, factors joined by `*`
(or `·`) with an optional `^<exp>`. Several parenthesized clauses may share a
line, e.g. `(x1 + x2)(x1 + x3)`. `#` starts a comment.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..utils.errors import CircuitSyntaxError, ShapeError
from ..utils.logger import circuit_logger as logger
from .models import Circuit, CircuitBuilder, Monomial

Clause = Tuple[Monomial, ...]

_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*([0-9]+))?\s*$")
_GROUP = re.compile(r"\(([^()]*)\)")
SEPARATOR = "---"


class Shape(str, Enum):
    PI_SIGMA = "PiSigma"
    PI_SIGMA_PI = "PiSigmaPi"
    PRODUCT = "Product"


@dataclass(frozen=True)
class StructuredPoly:
    """
    A product of clauses.

    Attributes:
        factors: Clauses of the (first) product
        second: Pi Sigma clauses after the separator in product form
        variables: Variable names by id
        shape: Declared or inferred shape tag
    """
    factors: Tuple[Clause, ...]
    variables: Tuple[str, ...]
    shape: Shape
    second: Tuple[Clause, ...] = ()

    @property
    def clauses(self) -> Tuple[Clause, ...]:
        return self.factors + self.second

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def k(self) -> int:
        return len(self.second)

    @property
    def s(self) -> int:
        return max((len(cl) for cl in self.clauses), default=0)

    @property
    def t(self) -> int:
        return max((term.degree for cl in self.clauses for term in cl), default=0)

    def validate(self, s: Optional[int] = None, t: Optional[int] = None) -> "StructuredPoly":
        """Check clause bounds against the shape and optional explicit bounds"""
        for index, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ShapeError(f"clause {index} is empty")
            if s is not None and len(clause) > s:
                raise ShapeError(f"clause {index} has {len(clause)} terms, bound is {s}")
            for term in clause:
                if term.degree == 0:
                    raise ShapeError(f"clause {index} has a constant term")
                if t is not None and term.degree > t:
                    raise ShapeError(f"clause {index} has a term of degree {term.degree}, bound is {t}")
        if self.shape == Shape.PI_SIGMA and any(term.degree != 1 for cl in self.factors for term in cl):
            raise ShapeError("Pi Sigma clauses must contain single variables only")
        if self.shape == Shape.PRODUCT:
            for index, clause in enumerate(self.second, start=1):
                if len(clause) > 3 or any(term.degree != 1 for term in clause):
                    raise ShapeError(f"second-part clause {index} must have at most 3 single-variable terms")
        elif self.second:
            raise ShapeError(f"shape {self.shape.value} has no second factor list")
        return self

    def format_term(self, term: Monomial) -> str:
        return term.format(self.variables)

    def format_clause(self, clause: Clause) -> str:
        return " + ".join(self.format_term(term) for term in clause)


def _parse_clause(body: str, lineno: int, column: int, var_index: Dict[str, int],
                  variables: List[str]) -> Clause:
    terms = []
    for raw_term in body.split("+"):
        if not raw_term.strip():
            raise CircuitSyntaxError("empty term", lineno, column)
        exponents: List[Tuple[int, int]] = []
        for raw_factor in re.split(r"[*·]", raw_term):
            match = _FACTOR.match(raw_factor)
            if not match:
                raise CircuitSyntaxError(f"malformed factor {raw_factor.strip()!r}", lineno, column)
            name, exp = match.group(1), int(match.group(2) or 1)
            if exp < 1:
                raise CircuitSyntaxError(f"exponent of {name} must be positive", lineno, column)
            if name not in var_index:
                var_index[name] = len(variables)
                variables.append(name)
            exponents.append((var_index[name], exp))
        terms.append(Monomial(tuple(exponents)))
    return tuple(terms)


def parse_structured(text: Union[str, bytes], shape: Optional[Shape] = None,
                     s: Optional[int] = None, t: Optional[int] = None) -> StructuredPoly:
    """
    Parse a clause file; the shape is inferred unless given.

    Raises:
        CircuitSyntaxError: malformed clauses (with line and column)
        ShapeError: clause bounds violated
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise CircuitSyntaxError(f"input is not valid UTF-8 ({e.reason})") from None
    variables: List[str] = []
    var_index: Dict[str, int] = {}
    parts: List[List[Clause]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        if stripped == SEPARATOR:
            if len(parts) == 2:
                raise CircuitSyntaxError("more than one separator line", lineno, 1)
            parts.append([])
            continue
        if stripped.startswith("("):
            groups = list(_GROUP.finditer(line))
            leftover = _GROUP.sub("", line).strip()
            if not groups or leftover:
                raise CircuitSyntaxError("unbalanced parentheses or text outside clauses", lineno, 1)
            for group in groups:
                parts[-1].append(_parse_clause(group.group(1), lineno, group.start() + 1, var_index, variables))
        else:
            parts[-1].append(_parse_clause(line, lineno, 1, var_index, variables))

    factors = tuple(parts[0])
    second = tuple(parts[1]) if len(parts) == 2 else ()
    if shape is None:
        if len(parts) == 2:
            shape = Shape.PRODUCT
        elif all(term.degree == 1 for clause in factors for term in clause):
            shape = Shape.PI_SIGMA
        else:
            shape = Shape.PI_SIGMA_PI
    sp = StructuredPoly(factors, tuple(variables), shape, second).validate(s, t)
    logger.debug(f"parsed {shape.value} polynomial: m={sp.m}, k={sp.k}, s={sp.s}, t={sp.t}")
    return sp


def serialize_structured(sp: StructuredPoly) -> bytes:
    lines = [sp.format_clause(clause) for clause in sp.factors]
    if sp.shape == Shape.PRODUCT:
        lines.append(SEPARATOR)
        lines.extend(sp.format_clause(clause) for clause in sp.second)
    return ("\n".join(lines) + "\n").encode("utf-8")


def structured_to_circuit(sp: StructuredPoly) -> Circuit:
    """Circuit computing the clause product: terms as Mul chains, clauses as Add gates"""
    builder = CircuitBuilder(sp.variables)
    clause_nodes = []
    for clause in sp.clauses:
        term_nodes = []
        for term in clause:
            leaves = [builder.input(sp.variables[var]) for var, exp in term.exponents for _ in range(exp)]
            term_nodes.append(builder.product(leaves))
        clause_nodes.append(builder.add(*term_nodes))
    return builder.build(builder.product(clause_nodes))


def structured_from_clauses(factors: Sequence[Sequence[Monomial]], variables: Sequence[str],
                            second: Sequence[Sequence[Monomial]] = ()) -> StructuredPoly:
    """Build and validate a StructuredPoly from clause lists, inferring the shape"""
    factors = tuple(tuple(cl) for cl in factors)
    second = tuple(tuple(cl) for cl in second)
    if second:
        shape = Shape.PRODUCT
    elif all(term.degree == 1 for cl in factors for term in cl):
        shape = Shape.PI_SIGMA
    else:
        shape = Shape.PI_SIGMA_PI
    return StructuredPoly(factors, tuple(variables), shape, second).validate()
