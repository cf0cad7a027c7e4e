"""
Graph Module

Undirected simple graphs on vertices 1..m and their text format: the first
line holds m, then one `i j` edge per line. `#` starts a comment.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Tuple, Union

from ..utils.errors import CircuitSyntaxError, UsageError

Edge = Tuple[int, int]
_NUMBER = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Graph:
    """
    Attributes:
        m: Vertex count
        edges: Unordered pairs in file order
    """
    m: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.m < 0:
            raise UsageError(f"vertex count must be non-negative, got {self.m}")
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise UsageError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.m and 1 <= j <= self.m):
                raise UsageError(f"edge ({i}, {j}) leaves vertices 1..{self.m}")
            key = frozenset((i, j))
            if key in seen:
                raise UsageError(f"duplicate edge ({i}, {j})")
            seen.add(key)
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        neighbors: Dict[int, list] = {v: [] for v in range(1, self.m + 1)}
        for i, j in self.edges:
            neighbors[i].append(j)
            neighbors[j].append(i)
        return {v: tuple(sorted(ns)) for v, ns in neighbors.items()}

    @cached_property
    def edge_set(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edge_set

    def sorted_edges(self) -> Tuple[Edge, ...]:
        """Edges as (min, max) pairs in lexicographic order"""
        return tuple(sorted((min(e), max(e)) for e in self.edges))


def parse_graph(text: Union[str, bytes]) -> Graph:
    """
    Parse the graph text format.

    Raises:
        CircuitSyntaxError: malformed lines, out-of-range vertices, self-loops
            or duplicate edges, with the offending line
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise CircuitSyntaxError(f"input is not valid UTF-8 ({e.reason})") from None
    m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if m is None:
            if len(fields) != 1 or not _NUMBER.fullmatch(fields[0]):
                raise CircuitSyntaxError("first line must hold the vertex count", lineno, 1)
            m = int(fields[0])
            continue
        if len(fields) != 2 or not all(_NUMBER.fullmatch(f) for f in fields):
            raise CircuitSyntaxError("edge lines hold two vertex numbers", lineno, 1)
        i, j = int(fields[0]), int(fields[1])
        if not (1 <= i <= m and 1 <= j <= m):
            raise CircuitSyntaxError(f"vertex outside 1..{m}", lineno, 1)
        if i == j:
            raise CircuitSyntaxError(f"self-loop at vertex {i}", lineno, 1)
        key = frozenset((i, j))
        if key in seen:
            raise CircuitSyntaxError(f"duplicate edge {i} {j}", lineno, 1)
        seen.add(key)
        edges.append((i, j))
    if m is None:
        raise CircuitSyntaxError("empty graph file: missing vertex count")
    return Graph(m, tuple(edges))


def serialize_graph(g: Graph) -> bytes:
    lines = [str(g.m)] + [f"{i} {j}" for i, j in g.edges]
    return ("\n".join(lines) + "\n").encode("utf-8")
