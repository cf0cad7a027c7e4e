"""
Circuit Text Format

Line-based circuit files:

    input <name>
    const <name> = <int>
    add <name> = <ref> <ref> ...
    mul <name> = <ref> <ref>
    output <ref>

Every gate statement also defines the positional alias g<i> (1-based, in
statement order). References may point forward; cycles are rejected.
`#` starts a comment.
"""

import heapq
import re
from typing import Dict, List, Optional, Tuple, Union

from ..utils.errors import CircuitSyntaxError, SerializationError
from ..utils.logger import circuit_logger as logger
from .models import Add, Circuit, Const, Gate, Input, Mul

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*$")
_POSITIONAL = re.compile(r"g([1-9][0-9]*)$")
_INT = re.compile(r"[+-]?[0-9]+$")


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, str):
        return text
    try:
        return bytes(text).decode("utf-8")
    except UnicodeDecodeError as e:
        raise CircuitSyntaxError(f"input is not valid UTF-8 ({e.reason})") from None


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns"""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_circuit(text: Union[str, bytes]) -> Circuit:
    """
    Parse circuit text into a topologically ordered Circuit.

    Raises:
        CircuitSyntaxError: on malformed statements, dangling references,
            Mul fan-in other than two, duplicate names, cycles or multiple outputs
    """
    source = _decode(text)
    statements: List[Tuple[str, str, object, int, int]] = []
    names: Dict[str, int] = {}
    output_ref: Optional[Tuple[str, int, int]] = None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        keyword, kcol = toks[0]
        if keyword == "output":
            if len(toks) != 2:
                raise CircuitSyntaxError("output takes exactly one reference", lineno, kcol)
            if output_ref is not None:
                raise CircuitSyntaxError("multiple output statements", lineno, kcol)
            output_ref = (toks[1][0], lineno, toks[1][1])
            continue

        index = len(statements)
        if keyword == "input":
            if len(toks) != 2:
                raise CircuitSyntaxError("input takes exactly one variable name", lineno, kcol)
            name, col = toks[1]
            _check_name(name, index, lineno, col, allow_repeat=True)
            if name in names and statements[names[name]][0] != "input":
                raise CircuitSyntaxError(f"name {name!r} already defined", lineno, col)
            statements.append(("input", name, None, lineno, col))
            names.setdefault(name, index)
            continue

        if keyword not in ("const", "add", "mul"):
            raise CircuitSyntaxError(f"unknown statement {keyword!r}", lineno, kcol)
        if len(toks) < 3 or toks[2][0] != "=":
            raise CircuitSyntaxError(f"expected '{keyword} <name> = ...'", lineno, kcol)
        name, col = toks[1]
        _check_name(name, index, lineno, col, allow_repeat=False)
        if name in names:
            raise CircuitSyntaxError(f"name {name!r} already defined", lineno, col)
        args = toks[3:]
        if keyword == "const":
            if len(args) != 1 or not _INT.match(args[0][0]):
                raise CircuitSyntaxError("const takes one integer literal", lineno, kcol)
            statements.append(("const", name, int(args[0][0]), lineno, col))
        elif keyword == "mul":
            if len(args) != 2:
                raise CircuitSyntaxError(f"mul gate needs exactly 2 inputs, got {len(args)}", lineno, kcol)
            statements.append(("mul", name, args, lineno, col))
        else:
            if not args:
                raise CircuitSyntaxError("add gate needs at least one input", lineno, kcol)
            statements.append(("add", name, args, lineno, col))
        names[name] = index

    def resolve(ref: str, lineno: int, col: int) -> int:
        if ref in names:
            return names[ref]
        positional = _POSITIONAL.match(ref)
        if positional and int(positional.group(1)) <= len(statements):
            return int(positional.group(1)) - 1
        raise CircuitSyntaxError(f"reference to undefined {ref!r}", lineno, col)

    children: List[Tuple[int, ...]] = []
    for kind, _, payload, lineno, _ in statements:
        if kind in ("add", "mul"):
            children.append(tuple(resolve(r, lineno, c) for r, c in payload))
        else:
            children.append(())

    order = _topological_order(children, statements)
    position = {old: new for new, old in enumerate(order)}

    variables: List[str] = []
    var_index: Dict[str, int] = {}
    nodes: List[Gate] = []
    lines: List[int] = []
    for old in order:
        kind, name, payload, lineno, _ = statements[old]
        if kind == "input":
            if name not in var_index:
                var_index[name] = len(variables)
                variables.append(name)
            nodes.append(Input(var_index[name]))
        elif kind == "const":
            nodes.append(Const(payload))
        elif kind == "add":
            nodes.append(Add(tuple(position[c] for c in children[old])))
        else:
            left, right = children[old]
            nodes.append(Mul(position[left], position[right]))
        lines.append(lineno)

    output = None
    if output_ref is not None:
        output = position[resolve(*output_ref)]
    logger.debug(f"parsed circuit: {len(nodes)} gates, {len(variables)} variables")
    return Circuit(tuple(nodes), output, tuple(variables), tuple(lines))


def _check_name(name: str, index: int, lineno: int, col: int, allow_repeat: bool) -> None:
    if not _NAME.match(name):
        raise CircuitSyntaxError(f"invalid name {name!r}", lineno, col)
    positional = _POSITIONAL.match(name)
    if positional and int(positional.group(1)) != index + 1:
        raise CircuitSyntaxError(f"name {name!r} clashes with positional alias g{index + 1}", lineno, col)
    if positional and allow_repeat:
        raise CircuitSyntaxError(f"variable name {name!r} is reserved for gate aliases", lineno, col)


def _topological_order(children: List[Tuple[int, ...]], statements) -> List[int]:
    """Kahn's algorithm, preferring the earliest statement; keeps already-ordered files stable"""
    count = len(children)
    parents: List[List[int]] = [[] for _ in range(count)]
    pending = [0] * count
    for i, kids in enumerate(children):
        for c in set(kids):
            parents[c].append(i)
        pending[i] = len(set(kids))
    ready = [i for i in range(count) if pending[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for parent in parents[i]:
            pending[parent] -= 1
            if pending[parent] == 0:
                heapq.heappush(ready, parent)
    if len(order) != count:
        stuck = min(i for i in range(count) if pending[i] > 0)
        _, name, _, lineno, col = statements[stuck]
        raise CircuitSyntaxError(f"cycle through gate {name!r}", lineno, col)
    return order


def serialize_circuit(c: Circuit) -> bytes:
    """
    Canonical text: nodes in stored topological order, every reference by
    its positional alias g<i>.
    """
    output = c.require_output()

    def ref(i: int) -> str:
        return f"g{i + 1}"

    lines = []
    for i, gate in enumerate(c.nodes):
        if isinstance(gate, Input):
            lines.append(f"input {c.variables[gate.var]}")
        elif isinstance(gate, Const):
            lines.append(f"const g{i + 1} = {gate.value}")
        elif isinstance(gate, Add):
            lines.append(f"add g{i + 1} = " + " ".join(ref(ch) for ch in gate.children))
        elif isinstance(gate, Mul):
            lines.append(f"mul g{i + 1} = {ref(gate.left)} {ref(gate.right)}")
        else:
            raise SerializationError(f"unknown gate {gate!r}")
    lines.append(f"output {ref(output)}")
    return ("\n".join(lines) + "\n").encode("utf-8")
