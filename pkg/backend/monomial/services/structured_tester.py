"""
Structured Tester Module

Multilinear-monomial testers for clause products.

Key Features:
- base_case_sigma2: Pi Sigma_2 Pi_t polynomials via 2-SAT over term selectors
- bb_test: deterministic branch and bound over the Pi_k Sigma_3 part,
  at most 2^k base-case leaves
- narrow_test: randomized narrowing of every Sigma_3 clause to two variables
- enum_test: exhaustive one-variable-per-clause baseline (3^k leaves)
- pi_sigma_test: c-monomials of Pi Sigma polynomials by matching / flow
- enumerate_selections: brute-force ground truth
"""

import itertools
import time
from dataclasses import dataclass
from math import ceil
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..circuit.models import Monomial
from ..circuit.structured import Clause, Shape, StructuredPoly
from ..schemas import TestReport, TrialOutcome
from ..tasks.runner import run_parallel
from ..utils.errors import ShapeError, UsageError
from ..utils.logger import structured_logger as logger
from ..utils.rng import make_rng, resolve_seed
from .two_sat import solve_2sat

VarClause = Tuple[int, ...]


@dataclass(frozen=True)
class ProductInstance:
    """
    F = F1 * F2 with F1 a Pi_m Sigma_2 Pi_t polynomial and F2 a Pi_k Sigma_3
    polynomial of single variables.

    Attributes:
        f1: Clauses of F1, each with at most two terms
        f2: Clauses of F2 as variable ids, duplicates collapsed
        variables: Variable names by id
    """
    f1: Tuple[Clause, ...]
    f2: Tuple[VarClause, ...]
    variables: Tuple[str, ...]

    def __post_init__(self):
        for index, clause in enumerate(self.f1, start=1):
            if not 1 <= len(clause) <= 2:
                raise ShapeError(f"F1 clause {index} has {len(clause)} terms; at most 2 are allowed")
        collapsed = []
        for index, clause in enumerate(self.f2, start=1):
            unique = tuple(dict.fromkeys(clause))
            if not 1 <= len(unique) <= 3:
                raise ShapeError(f"F2 clause {index} must have 1 to 3 distinct variables")
            collapsed.append(unique)
        object.__setattr__(self, "f2", tuple(collapsed))

    @property
    def m(self) -> int:
        return len(self.f1)

    @property
    def k(self) -> int:
        return len(self.f2)

    @property
    def t(self) -> int:
        return max((term.degree for clause in self.f1 for term in clause), default=0)

    @classmethod
    def from_structured(cls, sp: StructuredPoly) -> "ProductInstance":
        if sp.shape != Shape.PRODUCT:
            raise ShapeError(f"expected a product instance F1 --- F2, got a {sp.shape.value} polynomial")
        f2 = []
        for index, clause in enumerate(sp.second, start=1):
            if any(term.degree != 1 for term in clause):
                raise ShapeError(f"F2 clause {index} must contain single variables only")
            f2.append(tuple(term.variables[0] for term in clause))
        return cls(sp.factors, tuple(f2), sp.variables)


def _sigma2_clauses(sp: StructuredPoly) -> Tuple[Clause, ...]:
    if sp.shape == Shape.PRODUCT:
        raise ShapeError("base case expects a Pi Sigma_2 Pi_t polynomial, not a product instance")
    for index, clause in enumerate(sp.factors, start=1):
        if not 1 <= len(clause) <= 2:
            raise ShapeError(f"clause {index} has {len(clause)} terms; the base case allows at most 2")
    return sp.factors


def select_sigma2(clauses: Sequence[Clause]) -> Optional[List[int]]:
    """
    Term index per clause whose product is multilinear, or None.

    Selector b_i chooses the first term of clause i. Non-multilinear terms
    are forbidden and terms of different clauses sharing a variable exclude
    each other.
    """
    def literal(i: int, choice: int) -> int:
        return i + 1 if choice == 0 else -(i + 1)

    sat: List[Tuple[int, int]] = []
    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for i, clause in enumerate(clauses):
        if len(clause) == 1:
            sat.append((literal(i, 0), literal(i, 0)))
        for choice, term in enumerate(clause):
            if not term.is_multilinear:
                sat.append((-literal(i, choice), -literal(i, choice)))
                continue
            for var in term.variables:
                occurrences.setdefault(var, []).append((i, choice))
    seen = set()
    for uses in occurrences.values():
        for (i, a), (j, b) in itertools.combinations(uses, 2):
            if i != j and (i, a, j, b) not in seen:
                seen.add((i, a, j, b))
                sat.append((-literal(i, a), -literal(j, b)))
    assignment = solve_2sat(len(clauses), sat)
    if assignment is None:
        return None
    return [0 if chosen else 1 for chosen in assignment]


def _selected_monomial(clauses: Sequence[Clause], selection: Sequence[int]) -> Monomial:
    product = Monomial()
    for clause, choice in zip(clauses, selection):
        product = product * clause[choice]
    return product


def base_case_sigma2(f: StructuredPoly) -> Tuple[TestReport, Optional[List[int]]]:
    """
    Decide whether one term per clause can be chosen with a multilinear product.

    Returns:
        The report and the selection (term index per clause) when the answer is yes
    """
    started = time.perf_counter()
    clauses = _sigma2_clauses(f)
    selection = select_sigma2(clauses)
    witness = None
    if selection is not None:
        witness = _selected_monomial(clauses, selection).format(f.variables)
    report = TestReport(
        answer="yes" if selection is not None else "no",
        tester="base_case_sigma2",
        elapsed=time.perf_counter() - started,
        config={"m": f.m, "t": f.t},
        witness=witness,
        stats={"clauses": f.m},
    )
    logger.debug(f"base case on {f.m} clauses: {report.answer}")
    return report, selection


def _unit(var: int) -> Clause:
    return (Monomial.of(var),)


def _pair(variables: Sequence[int]) -> Clause:
    return tuple(Monomial.of(v) for v in variables)


@dataclass
class _Search:
    leaves: int = 0
    pruned: int = 0


def _bb_leaves(f1: Tuple[Clause, ...], f2: Tuple[VarClause, ...], search: _Search) -> Iterator[Tuple[Clause, ...]]:
    """Base-case instances of the branch and bound tree, depth first"""
    if not f2:
        search.leaves += 1
        yield f1
        return
    g1, rest = f2[0], f2[1:]
    x = g1[0]

    # branch 1: x is not taken from g1
    g1_rest = g1[1:]
    if g1_rest:
        yield from _bb_leaves(f1 + (_pair(g1_rest),), rest, search)
    else:
        search.pruned += 1

    # branch 2: x is taken from g1 and from no other clause
    narrowed = tuple(tuple(v for v in clause if v != x) for clause in rest)
    assert all(x not in clause for clause in narrowed)
    if all(narrowed):
        yield from _bb_leaves(f1 + (_unit(x),), narrowed, search)
    else:
        search.pruned += 1


def _run_leaves(leaves: Iterator[Tuple[Clause, ...]], threads: int):
    """First leaf with a multilinear selection, and per-leaf outcomes"""
    def solve(item):
        index, clauses = item
        t0 = time.perf_counter()
        selection = select_sigma2(clauses)
        outcome = TrialOutcome(trial=index, verdict=selection is not None,
                               micros=int((time.perf_counter() - t0) * 1e6))
        return outcome, clauses, selection

    if threads <= 1:
        results = []
        for item in enumerate(leaves):
            results.append(solve(item))
            if results[-1][0].verdict:
                break
    else:
        results = run_parallel(solve, list(enumerate(leaves)), threads, stop=lambda r: r[0].verdict)
    hit = next((r for r in results if r[0].verdict), None)
    return [r[0] for r in results], hit


def _product_report(tester: str, inst: ProductInstance, started: float, outcomes, hit,
                    config: Dict, stats: Dict) -> TestReport:
    witness = None
    if hit is not None:
        _, clauses, selection = hit
        witness = _selected_monomial(clauses, selection).format(inst.variables)
    report = TestReport(
        answer="yes" if hit is not None else "no",
        tester=tester,
        trials=len(outcomes),
        per_trial=outcomes,
        elapsed=time.perf_counter() - started,
        config={"m": inst.m, "k": inst.k, "t": inst.t, **config},
        witness=witness,
        stats=stats,
    )
    logger.info(f"{tester}: {report.answer} after {report.trials} base case(s) in {report.elapsed:.3f}s")
    return report


def bb_test(inst: ProductInstance, threads: int = 1) -> TestReport:
    """
    Exact branch and bound on the first variable x of the first F2 clause g1.

    Branch 1 keeps g1 without x as a two-term clause of F1; branch 2 appends
    the clause (x) to F1 and removes x from every remaining F2 clause. Both
    shrink F2 by one clause, so at most 2^k leaves reach the base case.
    """
    started = time.perf_counter()
    search = _Search()
    outcomes, hit = _run_leaves(_bb_leaves(inst.f1, inst.f2, search), threads)
    if search.leaves > 2 ** inst.k:
        raise AssertionError(f"branch and bound explored {search.leaves} leaves for k={inst.k}")
    stats = {"leaves": search.leaves, "pruned": search.pruned, "leaf_bound": 2 ** inst.k}
    return _product_report("bb_test", inst, started, outcomes, hit, {"threads": threads}, stats)


def default_reps(k: int) -> int:
    """ceil(1.5^k) repetitions, computed exactly"""
    return max(1, -(-3 ** k // 2 ** k))


def narrow_test(inst: ProductInstance, rng: Optional[np.random.Generator] = None, reps: Optional[int] = None,
                threads: int = 1, seed: Optional[int] = None) -> TestReport:
    """
    Randomized narrowing: per repetition every three-variable F2 clause keeps
    two of its variables chosen uniformly, and the resulting Pi Sigma_2 Pi_t
    instance goes to the base case. Yes answers are always correct.
    """
    started = time.perf_counter()
    reps = default_reps(inst.k) if reps is None else reps
    if reps < 1:
        raise UsageError(f"reps must be at least 1, got {reps}")
    config = {"reps": reps, "threads": threads}
    if rng is None:
        seed = resolve_seed(seed)
        rng = make_rng(seed)
        config["seed"] = seed

    def narrowed() -> Iterator[Tuple[Clause, ...]]:
        for _ in range(reps):
            dropped = rng.integers(0, 3, size=inst.k)
            extra = []
            for j, clause in enumerate(inst.f2):
                if len(clause) == 3:
                    clause = tuple(v for pos, v in enumerate(clause) if pos != dropped[j])
                extra.append(_pair(clause))
            yield inst.f1 + tuple(extra)

    outcomes, hit = _run_leaves(narrowed(), threads)
    stats = {"repetitions": len(outcomes), "planned": reps}
    return _product_report("narrow_test", inst, started, outcomes, hit, config, stats)


def enum_test(inst: ProductInstance, threads: int = 1) -> TestReport:
    """Try every choice of one variable per F2 clause (at most 3^k base cases)"""
    started = time.perf_counter()
    search = _Search()

    def leaves() -> Iterator[Tuple[Clause, ...]]:
        for choice in itertools.product(*inst.f2):
            if len(set(choice)) < len(choice):
                search.pruned += 1
                continue
            search.leaves += 1
            yield inst.f1 + tuple(_unit(v) for v in choice)

    outcomes, hit = _run_leaves(leaves(), threads)
    stats = {"leaves": search.leaves, "pruned": search.pruned}
    return _product_report("enum_test", inst, started, outcomes, hit, {"threads": threads}, stats)


def enumerate_selections(sp: StructuredPoly) -> Tuple[bool, Optional[Monomial]]:
    """Brute force over one term per clause of every factor list; first multilinear product"""
    for choice in itertools.product(*sp.clauses):
        product = Monomial()
        for term in choice:
            product = product * term
        if product.is_multilinear:
            return True, product
    return False, None


def pi_sigma_test(sp: StructuredPoly, c: int) -> TestReport:
    """
    Does a Pi Sigma polynomial have a c-monomial in its expansion.

    Clauses are matched to variables, each variable used at most c-1 times:
    a bipartite matching for c = 2, a maximum flow otherwise.
    """
    started = time.perf_counter()
    if c < 2:
        raise UsageError(f"c must be at least 2, got {c}")
    clauses = sp.clauses
    if any(term.degree != 1 for clause in clauses for term in clause):
        raise ShapeError("pi_sigma_test needs single-variable terms in every clause")
    chosen: Dict[int, int] = {}
    if c == 2:
        graph = nx.Graph()
        left = [("clause", i) for i in range(len(clauses))]
        graph.add_nodes_from(left)
        for i, clause in enumerate(clauses):
            for term in clause:
                graph.add_edge(("clause", i), ("var", term.variables[0]))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
        for i in range(len(clauses)):
            if ("clause", i) in matching:
                chosen[i] = matching[("clause", i)][1]
    else:
        graph = nx.DiGraph()
        for i, clause in enumerate(clauses):
            graph.add_edge("source", ("clause", i), capacity=1)
            for term in clause:
                var = term.variables[0]
                graph.add_edge(("clause", i), ("var", var), capacity=1)
                graph.add_edge(("var", var), "sink", capacity=c - 1)
        if clauses:
            _, flow = nx.maximum_flow(graph, "source", "sink")
            for i in range(len(clauses)):
                for node, amount in flow[("clause", i)].items():
                    if amount > 0:
                        chosen[i] = node[1]
    found = len(chosen) == len(clauses)
    witness = None
    if found:
        witness = Monomial.of(*chosen.values()).format(sp.variables)
    report = TestReport(
        answer="yes" if found else "no",
        tester="pi_sigma_test",
        elapsed=time.perf_counter() - started,
        config={"c": c, "m": len(clauses)},
        witness=witness,
        stats={"matched": len(chosen)},
    )
    logger.info(f"pi_sigma_test: {report.answer} ({len(chosen)} of {len(clauses)} clauses matched)")
    return report
