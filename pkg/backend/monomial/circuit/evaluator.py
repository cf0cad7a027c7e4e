"""
Circuit Evaluation Module

Single-pass evaluation of circuits over any ring that supplies the Ring
operations, plus the tag augmentation C -> C' and degree padding.

Key Features:
- Ring protocol with Z_p, group-algebra and degree-graded implementations
- eval_circuit / eval_augmented in one topological pass, freeing values
  after their last use
- augment_circuit with Mul-gate or input-variable tag sites
- pad_degree multiplies the output by fresh variables
"""

from typing import Any, Callable, Dict, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from ..algebra.field import QuotientRing, prime_field
from ..algebra.group_algebra import GroupAlgebraElement, ga_add, ga_mul, ga_scale
from ..utils.errors import UsageError
from ..utils.logger import circuit_logger as logger
from .expansion import degree_bound
from .models import TAG_SITES, Add, AugmentedCircuit, Circuit, CircuitBuilder, Const, Input, Mul, gate_children


class Ring(Protocol):
    def zero(self) -> Any: ...

    def one(self) -> Any: ...

    def from_int(self, c: int) -> Any: ...

    def add(self, a: Any, b: Any) -> Any: ...

    def mul(self, a: Any, b: Any) -> Any: ...

    def scale(self, a: Any, s: Any) -> Any: ...

    def is_zero(self, a: Any) -> bool: ...


class ScalarRing:
    """Z_p on Python ints"""

    def __init__(self, p: int):
        self.p = p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.p

    def from_int(self, c: int) -> int:
        return int(c) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def scale(self, a: int, s: int) -> int:
        return (a * int(s)) % self.p

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0


class GroupAlgebraRing:
    """R[Z_p^d] with R a coefficient ring"""

    def __init__(self, p: int, dim: int, coeff_ring: Optional[QuotientRing] = None, engine: str = "auto"):
        self.p = p
        self.dim = dim
        self.coeff_ring = coeff_ring or prime_field(p)
        self.engine = engine

    def zero(self) -> GroupAlgebraElement:
        return GroupAlgebraElement.zero(self.p, self.dim, self.coeff_ring)

    def one(self) -> GroupAlgebraElement:
        return GroupAlgebraElement.identity(self.p, self.dim, self.coeff_ring)

    def from_int(self, c: int) -> GroupAlgebraElement:
        return ga_scale(int(c), self.one())

    def add(self, a, b):
        return ga_add(a, b)

    def mul(self, a, b):
        return ga_mul(a, b, self.engine)

    def scale(self, a, s):
        return ga_scale(s, a)

    def is_zero(self, a) -> bool:
        return a.is_zero()


Graded = Tuple[Optional[Any], ...]


class GradedRing:
    """
    Truncated series sum_{e <= degree} z^e a_e over a base ring.

    Missing grades are stored as None so products skip them.
    """

    def __init__(self, base: Ring, degree: int):
        if degree < 0:
            raise UsageError(f"grading degree must be non-negative, got {degree}")
        self.base = base
        self.degree = degree

    def zero(self) -> Graded:
        return (None,) * (self.degree + 1)

    def lift(self, value: Any, grade: int = 1) -> Graded:
        out: List[Optional[Any]] = [None] * (self.degree + 1)
        if grade <= self.degree:
            out[grade] = value
        return tuple(out)

    def one(self) -> Graded:
        return self.lift(self.base.one(), 0)

    def from_int(self, c: int) -> Graded:
        return self.lift(self.base.from_int(c), 0)

    def add(self, a: Graded, b: Graded) -> Graded:
        return tuple(y if x is None else x if y is None else self.base.add(x, y) for x, y in zip(a, b))

    def mul(self, a: Graded, b: Graded) -> Graded:
        out: List[Optional[Any]] = [None] * (self.degree + 1)
        for i, x in enumerate(a):
            if x is None:
                continue
            for j in range(self.degree + 1 - i):
                y = b[j]
                if y is None:
                    continue
                term = self.base.mul(x, y)
                out[i + j] = term if out[i + j] is None else self.base.add(out[i + j], term)
        return tuple(out)

    def scale(self, a: Graded, s: Any) -> Graded:
        return tuple(None if x is None else self.base.scale(x, s) for x in a)

    def component(self, a: Graded, grade: int) -> Any:
        value = a[grade]
        return self.base.zero() if value is None else value

    def is_zero(self, a: Graded) -> bool:
        return all(x is None or self.base.is_zero(x) for x in a)


Assignment = Union[Mapping[Union[int, str], Any], Sequence[Any]]


def _leaf_values(c: Circuit, assignment: Assignment) -> Callable[[int], Any]:
    if isinstance(assignment, Mapping):
        def lookup(var: int):
            if var in assignment:
                return assignment[var]
            name = c.variables[var]
            if name in assignment:
                return assignment[name]
            raise UsageError(f"no value assigned to variable {name!r}")
        return lookup

    values = list(assignment)
    if len(values) < c.n:
        raise UsageError(f"assignment covers {len(values)} of {c.n} variables")
    return lambda var: values[var]


def _evaluate(c: Circuit, leaf: Callable[[int], Any], ring: Ring,
              after: Optional[Callable[[int, Any], Any]] = None) -> Any:
    output = c.require_output()
    reachable = c.reachable
    uses = [0] * c.size
    for i, gate in enumerate(c.nodes):
        if reachable[i]:
            for child in gate_children(gate):
                uses[child] += 1

    values: Dict[int, Any] = {}

    def take(i: int) -> Any:
        value = values[i]
        uses[i] -= 1
        if uses[i] == 0:
            del values[i]
        return value

    for i, gate in enumerate(c.nodes):
        if not reachable[i]:
            continue
        if isinstance(gate, Input):
            value = leaf(gate.var)
        elif isinstance(gate, Const):
            value = ring.from_int(gate.value)
        elif isinstance(gate, Add):
            children = [take(ch) for ch in gate.children]
            value = children[0]
            for other in children[1:]:
                value = ring.add(value, other)
        elif isinstance(gate, Mul):
            value = ring.mul(take(gate.left), take(gate.right))
        else:
            raise UsageError(f"unknown gate {gate!r}")
        if after is not None:
            value = after(i, value)
        values[i] = value
    return values[output]


def eval_circuit(c: Circuit, assignment: Assignment, ring: Ring) -> Any:
    """
    Value of the output gate under the ring's operations.

    Args:
        c: Circuit with an output
        assignment: Values keyed by variable id or name, or a sequence by id
        ring: Object implementing the Ring protocol

    Returns:
        The ring value computed at the output
    """
    return _evaluate(c, _leaf_values(c, assignment), ring)


def eval_augmented(ac: AugmentedCircuit, assignment: Assignment, tags: Sequence[Any], ring: Ring) -> Any:
    """Evaluate C' with tag y_t set to the ring scalar tags[t]"""
    if len(tags) < ac.h:
        raise UsageError(f"{len(tags)} tag values for {ac.h} tag variables")

    def after(node: int, value: Any) -> Any:
        tag = ac.y_of_node.get(node)
        return value if tag is None else ring.scale(value, tags[tag])

    return _evaluate(ac.base, _leaf_values(ac.base, assignment), ring, after)


def augment_circuit(c: Circuit, sites: str = "mul") -> AugmentedCircuit:
    """
    Attach fresh tag variables.

    sites="mul": one y per Mul gate, in node order (h = Mul-gate count).
    sites="input": y_i on every input of x_i (h = n).
    """
    if sites not in TAG_SITES:
        raise UsageError(f"unknown tag sites {sites!r}; expected one of {TAG_SITES}")
    if sites == "mul":
        y_of_node = {g: t for t, g in enumerate(c.mul_gates)}
        h = len(y_of_node)
    else:
        y_of_node = {i: g.var for i, g in enumerate(c.nodes) if isinstance(g, Input)}
        h = c.n
    logger.debug(f"augmented circuit: {h} tags on {sites} sites")
    return AugmentedCircuit(c, y_of_node, h, sites)


def pad_degree(c: Circuit, k: int, prefix: str = "z") -> Circuit:
    """
    Multiply the output by k - degree_bound(c) fresh variables so that
    degree-bound p-monomials reach degree k. Returns c when no padding is needed.
    """
    missing = k - degree_bound(c)
    if missing <= 0:
        return c
    builder = CircuitBuilder(c.variables)
    for gate in c.nodes:
        builder.push(gate)
    taken = set(c.variables)
    factors = [c.require_output()]
    index = 1
    while len(factors) <= missing:
        name = f"{prefix}{index}"
        index += 1
        if name not in taken:
            factors.append(builder.input(name))
    logger.info(f"padded circuit degree by {missing} fresh variables")
    return builder.build(builder.product(factors))
