"""
Corpus Module

Seeded random instances for cross-checks and benchmarks: circuits, formulas,
structured polynomials and graphs, plus an on-disk corpus writer.
"""

import os
from typing import Dict, List, Optional

import numpy as np

from ..applications.graph import Graph
from ..circuit.models import Add, Circuit, CircuitBuilder, Monomial
from ..circuit.structured import StructuredPoly, structured_from_clauses, structured_to_circuit
from ..utils.logger import bench_logger as logger
from ..utils.rng import make_rng
from ..utils.storage import StorageService


def _names(n: int) -> List[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def random_formula(rng: np.random.Generator, n: int, gates: int, p: int, const_prob: float = 0.1) -> Circuit:
    """Tree-shaped circuit: every gate and leaf feeds at most one parent"""
    builder = CircuitBuilder(_names(n))
    pool: List[int] = []

    def leaf() -> int:
        if p > 1 and rng.random() < const_prob:
            return builder.const(int(rng.integers(1, p)))
        return builder.input(f"x{int(rng.integers(1, n + 1))}")

    for _ in range(gates):
        is_mul = rng.random() < 0.5
        arity = 2 if is_mul else int(rng.integers(2, 4))
        children = []
        for _ in range(arity):
            if pool and rng.random() < 0.6:
                children.append(pool.pop(int(rng.integers(len(pool)))))
            else:
                children.append(leaf())
        node = builder.mul(*children) if is_mul else builder.push(Add(tuple(children)))
        pool.append(node)
    return builder.build(pool[-1] if pool else leaf())


def random_circuit(rng: np.random.Generator, n: int, gates: int, p: int, const_prob: float = 0.1) -> Circuit:
    """DAG with reuse: gate inputs are drawn from every earlier node"""
    builder = CircuitBuilder(_names(n))
    nodes = [builder.input(name) for name in _names(n)]
    for _ in range(gates):
        if p > 1 and rng.random() < const_prob:
            nodes.append(builder.const(int(rng.integers(1, p))))
            continue
        if rng.random() < 0.5:
            left, right = (int(i) for i in rng.integers(0, len(nodes), size=2))
            nodes.append(builder.mul(nodes[left], nodes[right]))
        else:
            arity = int(rng.integers(2, 4))
            picks = rng.choice(len(nodes), size=min(arity, len(nodes)), replace=False)
            nodes.append(builder.push(Add(tuple(nodes[int(i)] for i in picks))))
    return builder.build(nodes[-1])


def _random_term(rng: np.random.Generator, n: int, t: int, square_prob: float) -> Monomial:
    degree = int(rng.integers(1, t + 1))
    variables = [int(v) for v in rng.integers(0, n, size=degree)]
    if degree >= 2 and rng.random() < square_prob:
        variables[1] = variables[0]
    return Monomial.of(*variables)


def random_pi_sigma(rng: np.random.Generator, m: int, n: int, s: int = 3) -> StructuredPoly:
    """Product of m clauses of up to s single variables"""
    clauses = [[Monomial.of(int(v)) for v in rng.integers(0, n, size=int(rng.integers(1, s + 1)))]
               for _ in range(m)]
    return structured_from_clauses(clauses, _names(n))


def random_sigma2(rng: np.random.Generator, m: int, n: int, t: int = 2, square_prob: float = 0.1) -> StructuredPoly:
    """Pi_m Sigma_2 Pi_t polynomial over n variables"""
    clauses = [[_random_term(rng, n, t, square_prob) for _ in range(int(rng.integers(1, 3)))] for _ in range(m)]
    return structured_from_clauses(clauses, _names(n))


def random_product_instance(rng: np.random.Generator, m: int, k: int, n: int, t: int = 2,
                            square_prob: float = 0.1) -> StructuredPoly:
    """F1 of m Sigma_2 Pi_t clauses times F2 of k clauses of three variables"""
    first = [[_random_term(rng, n, t, square_prob) for _ in range(int(rng.integers(1, 3)))] for _ in range(m)]
    second = [[Monomial.of(int(v)) for v in rng.integers(0, n, size=3)] for _ in range(k)]
    return structured_from_clauses(first, _names(n), second)


def random_graph(rng: np.random.Generator, m: int, edge_prob: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if rng.random() < edge_prob]
    return Graph(m, tuple(edges))


def write_corpus(directory: str, count: int, seed: int = 0, storage: Optional[StorageService] = None,
                 max_k: int = 6) -> Dict[str, List[str]]:
    """
    Write count instances of each kind: ΠΣ circuits of degree max_k
    (rt-*.circ), product instances with k = 1..max_k (bb-*.poly) and graphs
    (graph-*.graph).
    """
    storage = storage or StorageService()
    rng = make_rng(seed)
    written: Dict[str, List[str]] = {"circuits": [], "structured": [], "graphs": []}
    os.makedirs(directory, exist_ok=True)
    for i in range(count):
        sp = random_pi_sigma(rng, max_k, n=max_k + 2)
        path = os.path.join(directory, f"rt-{i:03d}.circ")
        written["circuits"].append(storage.save_circuit(structured_to_circuit(sp), path))

        k = 1 + i % max_k
        inst = random_product_instance(rng, m=2 * k, k=k, n=3 * k + 2)
        path = os.path.join(directory, f"bb-{i:03d}.poly")
        written["structured"].append(storage.save_structured(inst, path))

        graph = random_graph(rng, int(rng.integers(3, 8)))
        path = os.path.join(directory, f"graph-{i:03d}.graph")
        written["graphs"].append(storage.save_graph(graph, path))
    logger.info(f"wrote corpus of {3 * count} instances to {directory} (seed {seed})")
    return written
