"""
Circuit Models Module

Immutable intermediate representation for arithmetic circuits and their
sum-product expansions.

Key Features:
- Gate records (Input, Const, Add, Mul) in a topologically ordered node list
- Circuit validation (children precede parents, binary Mul, fan-in >= 1 Add)
- Formula detection by fan-out
- CircuitBuilder for programmatic construction
- AugmentedCircuit: fresh tag variables attached to Mul gates or to inputs
- Monomial and ExpansionTable for the brute-force oracle
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..utils.errors import SerializationError, UsageError


@dataclass(frozen=True)
class Input:
    var: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Add:
    children: Tuple[int, ...]


@dataclass(frozen=True)
class Mul:
    left: int
    right: int

    @property
    def children(self) -> Tuple[int, int]:
        return (self.left, self.right)


Gate = Union[Input, Const, Add, Mul]


def gate_children(gate: Gate) -> Tuple[int, ...]:
    if isinstance(gate, (Add, Mul)):
        return tuple(gate.children)
    return ()


@dataclass(frozen=True)
class FormulaFlag:
    is_formula: bool


@dataclass(frozen=True)
class Circuit:
    """
    A DAG of gates; node i may only reference nodes j < i.

    Attributes:
        nodes: Gates in topological order
        output: Output node id, or None for a circuit still being assembled
        variables: Variable names indexed by variable id
        lines: Source line of each node when parsed from text
    """
    nodes: Tuple[Gate, ...]
    output: Optional[int]
    variables: Tuple[str, ...]
    lines: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "variables", tuple(self.variables))
        for i, gate in enumerate(self.nodes):
            if isinstance(gate, Input):
                if not 0 <= gate.var < len(self.variables):
                    raise UsageError(f"node {i}: variable id {gate.var} out of range")
            elif isinstance(gate, Add):
                if not gate.children:
                    raise UsageError(f"node {i}: add gate needs at least one input")
            elif isinstance(gate, Const):
                pass
            elif not isinstance(gate, Mul):
                raise UsageError(f"node {i}: unknown gate {gate!r}")
            for child in gate_children(gate):
                if not 0 <= child < i:
                    raise UsageError(f"node {i}: child {child} does not precede it")
        if self.output is not None and not 0 <= self.output < len(self.nodes):
            raise UsageError(f"output node {self.output} out of range")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def require_output(self) -> int:
        if self.output is None:
            raise SerializationError("circuit has no output gate")
        return self.output

    @cached_property
    def mul_gates(self) -> Tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.nodes) if isinstance(g, Mul))

    @cached_property
    def fanout(self) -> Tuple[int, ...]:
        counts = Counter()
        for gate in self.nodes:
            counts.update(gate_children(gate))
        return tuple(counts[i] for i in range(self.size))

    @cached_property
    def reachable(self) -> Tuple[bool, ...]:
        """Nodes the output depends on"""
        seen = [False] * self.size
        if self.output is None:
            return tuple(seen)
        stack = [self.output]
        while stack:
            i = stack.pop()
            if not seen[i]:
                seen[i] = True
                stack.extend(gate_children(self.nodes[i]))
        return tuple(seen)

    @property
    def is_formula(self) -> bool:
        """Every gate feeding the output has fan-out at most one"""
        return all(f <= 1 for f, used in zip(self.fanout, self.reachable) if used)

    def formula_flag(self) -> FormulaFlag:
        return FormulaFlag(self.is_formula)

    def variable_id(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None


class CircuitBuilder:
    """Incremental construction of a Circuit in topological order"""

    def __init__(self, variables: Sequence[str] = ()):
        self._nodes: List[Gate] = []
        self._variables: List[str] = []
        self._var_index: Dict[str, int] = {}
        for name in variables:
            self.variable(name)

    def variable(self, name: str) -> int:
        if name not in self._var_index:
            self._var_index[name] = len(self._variables)
            self._variables.append(name)
        return self._var_index[name]

    def push(self, gate: Gate) -> int:
        self._nodes.append(gate)
        return len(self._nodes) - 1

    def input(self, name: str) -> int:
        return self.push(Input(self.variable(name)))

    def const(self, value: int) -> int:
        return self.push(Const(int(value)))

    def add(self, *children: int) -> int:
        """Sum of children; an empty sum is the constant 0"""
        if not children:
            return self.const(0)
        if len(children) == 1:
            return children[0]
        return self.push(Add(tuple(children)))

    def mul(self, left: int, right: int) -> int:
        return self.push(Mul(left, right))

    def product(self, factors: Sequence[int]) -> int:
        """Left-leaning product chain; an empty product is the constant 1"""
        if not factors:
            return self.const(1)
        acc = factors[0]
        for f in factors[1:]:
            acc = self.mul(acc, f)
        return acc

    def build(self, output: Optional[int]) -> Circuit:
        return Circuit(tuple(self._nodes), output, tuple(self._variables))


TAG_SITES = ("mul", "input")


@dataclass(frozen=True)
class AugmentedCircuit:
    """
    A circuit with a fresh tag variable y_t attached at tag sites.

    With sites="mul" every Mul gate g is followed by a multiplication with
    its own y; with sites="input" every input of variable x_i is multiplied
    by y_i. Setting every tag to 1 recovers the base circuit.
    """
    base: Circuit
    y_of_node: Mapping[int, int]
    h: int
    sites: str = "mul"

    @property
    def y_of_mul(self) -> Mapping[int, int]:
        return self.y_of_node if self.sites == "mul" else {}

    def tag_names(self) -> Tuple[str, ...]:
        taken = set(self.base.variables)
        names = []
        for t in range(self.h):
            name = f"y{t + 1}"
            while name in taken:
                name += "'"
            taken.add(name)
            names.append(name)
        return tuple(names)

    def to_circuit(self) -> Circuit:
        """Materialize the augmented circuit with tag variables appended after the x's"""
        builder = CircuitBuilder(self.base.variables)
        tag_inputs: Dict[int, int] = {}
        names = self.tag_names()
        mapped: List[int] = []
        for i, gate in enumerate(self.base.nodes):
            if isinstance(gate, Input):
                node = builder.input(self.base.variables[gate.var])
            elif isinstance(gate, Const):
                node = builder.const(gate.value)
            elif isinstance(gate, Add):
                node = builder.push(Add(tuple(mapped[c] for c in gate.children)))
            else:
                node = builder.mul(mapped[gate.left], mapped[gate.right])
            if i in self.y_of_node:
                tag = self.y_of_node[i]
                if tag not in tag_inputs or self.sites == "mul":
                    tag_inputs[tag] = builder.input(names[tag])
                node = builder.mul(node, tag_inputs[tag])
            mapped.append(node)
        output = mapped[self.base.output] if self.base.output is not None else None
        for name in names:
            builder.variable(name)
        return builder.build(output)


@dataclass(frozen=True, order=True)
class Monomial:
    """A product of variables; exponents are (variable id, exponent) pairs sorted by id"""
    exponents: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: Dict[int, int] = {}
        for var, exp in self.exponents:
            if exp < 0:
                raise UsageError(f"negative exponent for variable {var}")
            if exp:
                merged[var] = merged.get(var, 0) + exp
        object.__setattr__(self, "exponents", tuple(sorted(merged.items())))

    @classmethod
    def from_dict(cls, exponents: Mapping[int, int]) -> "Monomial":
        return cls(tuple(exponents.items()))

    @classmethod
    def of(cls, *variables: int) -> "Monomial":
        """Product of the listed variables, repeats allowed"""
        return cls(tuple(Counter(variables).items()))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.exponents)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exponents)

    @property
    def is_multilinear(self) -> bool:
        return all(e == 1 for _, e in self.exponents)

    def is_c_monomial(self, c: int) -> bool:
        return all(e < c for _, e in self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.exponents + other.exponents)

    def evaluate(self, assignment: Sequence[int], p: int) -> int:
        value = 1
        for var, exp in self.exponents:
            value = value * pow(int(assignment[var]), exp, p) % p
        return value

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for var, exp in self.exponents:
            name = names[var] if names is not None else f"x{var + 1}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)


@dataclass
class ExpansionTable:
    """Monomial -> nonzero coefficient in Z_p"""
    entries: Dict[Monomial, int]
    p: int

    def __post_init__(self):
        self.entries = {m: c % self.p for m, c in self.entries.items() if c % self.p}

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, monomial: Monomial) -> int:
        return self.entries.get(monomial, 0)

    def items(self) -> Iterable[Tuple[Monomial, int]]:
        return self.entries.items()

    def evaluate(self, assignment: Sequence[int]) -> int:
        return sum(c * m.evaluate(assignment, self.p) for m, c in self.entries.items()) % self.p

    def format(self, names: Optional[Sequence[str]] = None) -> Dict[str, int]:
        return {m.format(names): c for m, c in sorted(self.entries.items())}
