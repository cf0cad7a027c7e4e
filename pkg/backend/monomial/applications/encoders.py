"""
Encoders Module

Graph problems as polynomials.

Key Features:
- encode_kpath: p(G, k) = sum_i p_{k,i}, p_{1,i} = x_i^c,
  p_{t+1,i} = x_i^c * sum over neighbors j of p_{t,j}; shared subcircuits
- encode_kclique: f(G, k) over edge variables x_{ij}; its expansion holds the
  k-clique monomial of every k-clique of G
- clique_monomial_check: presence of one specific clique monomial
"""

from itertools import combinations
from typing import Dict, Optional, Sequence

from ..circuit.expansion import expand_oracle
from ..circuit.models import Circuit, CircuitBuilder, ExpansionTable, Monomial
from ..utils.config import settings
from ..utils.errors import UsageError
from ..utils.logger import applications_logger as logger
from .graph import Graph


def vertex_name(i: int) -> str:
    return f"x{i}"


def edge_name(i: int, j: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"x{i}_{j}"


def encode_kpath(g: Graph, k: int, c: int = 1) -> Circuit:
    """
    Circuit for p(G, k); degree_bound is c*k and the expansion has a monomial
    with every exponent equal to c exactly when G has a path on k vertices.
    """
    if k < 1 or c < 1:
        raise UsageError(f"k and c must be at least 1, got k={k}, c={c}")
    builder = CircuitBuilder([vertex_name(i) for i in range(1, g.m + 1)])
    powers = {}
    for i in range(1, g.m + 1):
        leaf = builder.input(vertex_name(i))
        powers[i] = builder.product([leaf] * c)
    level: Dict[int, int] = dict(powers)
    for _ in range(k - 1):
        level = {i: builder.mul(powers[i], builder.add(*(level[j] for j in g.neighbors(i))))
                 for i in range(1, g.m + 1)}
    circuit = builder.build(builder.add(*level.values()))
    logger.debug(f"k-path circuit: m={g.m}, |E|={len(g.edges)}, k={k}, c={c}, {circuit.size} gates")
    return circuit


def encode_kclique(g: Graph, k: int) -> Circuit:
    """
    Circuit for f(G, k): f(G,1) = 1, f(G,2) = sum of edge variables and
    f(G,t+1) = sum_i (sum_{(i,j) in E} x_ij)^t * f(G,t). Degree k(k-1)/2.
    """
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    edges = g.sorted_edges()
    builder = CircuitBuilder([edge_name(i, j) for i, j in edges])
    if k == 1:
        return builder.build(builder.const(1))
    inputs = {frozenset(e): builder.input(edge_name(*e)) for e in edges}
    current = builder.add(*inputs.values())
    stars = {i: builder.add(*(inputs[frozenset((i, j))] for j in g.neighbors(i)))
             for i in range(1, g.m + 1) if g.neighbors(i)}
    powers = dict(stars)
    for t in range(2, k):
        if t > 2:
            powers = {i: builder.mul(powers[i], stars[i]) for i in stars}
        else:
            powers = {i: builder.mul(stars[i], stars[i]) for i in stars}
        current = builder.add(*(builder.mul(powers[i], current) for i in stars))
    circuit = builder.build(current)
    logger.debug(f"k-clique circuit: m={g.m}, |E|={len(edges)}, k={k}, {circuit.size} gates")
    return circuit


def clique_monomial(vertex_set: Sequence[int], variables: Sequence[str]) -> Optional[Monomial]:
    """prod_{i<j in C} x_ij over the circuit's variables, or None when a pair has no variable"""
    index = {name: v for v, name in enumerate(variables)}
    ids = []
    for i, j in combinations(sorted(vertex_set), 2):
        name = edge_name(i, j)
        if i == j or name not in index:
            return None
        ids.append(index[name])
    return Monomial.of(*ids)


def clique_monomial_check(tbl: ExpansionTable, vertex_set: Sequence[int], variables: Sequence[str]) -> bool:
    """True iff the k-clique monomial of vertex_set has a nonzero coefficient in tbl"""
    k = len(vertex_set)
    if len(set(vertex_set)) != k:
        return False
    monomial = clique_monomial(vertex_set, variables)
    if monomial is None or monomial.degree != k * (k - 1) // 2:
        return False
    return tbl[monomial] != 0


def has_clique_monomial(g: Graph, k: int, p: Optional[int] = None, cap: Optional[int] = None):
    """
    Search every k-subset of vertices for its clique monomial in the
    expansion of f(G, k) over Z_p (default CLIQUE_ORACLE_PRIME).

    Returns:
        (found, vertex set or None)
    """
    p = settings.CLIQUE_ORACLE_PRIME if p is None else p
    circuit = encode_kclique(g, k)
    table = expand_oracle(circuit, p, cap)
    for subset in combinations(range(1, g.m + 1), k):
        if clique_monomial_check(table, subset, circuit.variables):
            return True, list(subset)
    return False, None
