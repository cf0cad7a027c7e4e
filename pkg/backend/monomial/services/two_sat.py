"""
2-SAT through the implication graph.

Literals are nonzero integers: +v is variable v (1-based) true, -v false. A
unit clause is written (a, a).
"""

from typing import Collection, List, Optional, Tuple

import networkx as nx

from ..utils.errors import UsageError

Clause = Tuple[int, int]


def implication_graph(num_vars: int, clauses: Collection[Clause]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(v for i in range(1, num_vars + 1) for v in (i, -i))
    for a, b in clauses:
        for lit in (a, b):
            if lit == 0 or abs(lit) > num_vars:
                raise UsageError(f"literal {lit} outside variables 1..{num_vars}")
        graph.add_edge(-a, b)
        graph.add_edge(-b, a)
    return graph


def solve_2sat(num_vars: int, clauses: Collection[Clause]) -> Optional[List[bool]]:
    """
    Satisfying assignment (index v-1 holds variable v) or None.

    Strongly connected components of the implication graph are condensed; a
    variable sharing a component with its negation is unsatisfiable, otherwise
    each variable takes the value whose literal comes later in topological order.
    """
    graph = implication_graph(num_vars, clauses)
    condensed = nx.condensation(graph)
    component = condensed.graph["mapping"]
    order = {c: i for i, c in enumerate(nx.topological_sort(condensed))}
    assignment = []
    for v in range(1, num_vars + 1):
        if component[v] == component[-v]:
            return None
        assignment.append(order[component[v]] > order[component[-v]])
    return assignment


def satisfies(assignment: List[bool], clauses: Collection[Clause]) -> bool:
    def value(lit: int) -> bool:
        return assignment[abs(lit) - 1] == (lit > 0)

    return all(value(a) or value(b) for a, b in clauses)
