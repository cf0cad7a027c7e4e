"""
Algebraic Branching Program Module

Noncommutative polynomials of formulas as layered weighted graphs and their
deterministic identity test.

Key Features:
- formula_to_abp: series/parallel realization of a formula; gate inputs are
  read left to right, so the word order of every monomial is fixed
- Edges carry a Z_p weight, an optional letter and an optional group shift;
  with shifts the graph yields one ABP per coordinate of Z_p[Z_p^d]
- nonzero_coordinates / rs_identity_test: word-length by word-length
  propagation of state vectors, keeping only a basis of their span mod p
- noncommutative_expand / expand_abp: brute-force word maps for small inputs
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.field import as_prime
from ..algebra.group import GroupVector
from ..algebra.linalg import row_reduce_mod_p
from ..circuit.models import Add, Circuit, Const, Input, Mul
from ..utils.config import settings
from ..utils.errors import ResourceLimitError, UsageError
from ..utils.logger import tester_logger as logger

Word = Tuple[int, ...]


@dataclass(frozen=True)
class AbpEdge:
    """weight * letter * [shift]; letter None reads nothing, shift None is the zero vector"""
    source: int
    target: int
    weight: int = 1
    letter: Optional[int] = None
    shift: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class AbpGraph:
    """
    Shared layered graph of a formula.

    Node ids are a topological order: every edge goes from a lower to a
    higher id.
    """
    p: int
    dim: int
    num_nodes: int
    edges: Tuple[AbpEdge, ...]
    source: int
    sink: int
    letters: int

    def __post_init__(self):
        for edge in self.edges:
            if not 0 <= edge.source < edge.target < self.num_nodes:
                raise UsageError(f"edge {edge.source}->{edge.target} breaks the topological order")

    @property
    def group_size(self) -> int:
        return self.p ** self.dim

    @cached_property
    def max_word_length(self) -> int:
        """Most letters read along any source-sink path"""
        best = [-1] * self.num_nodes
        best[self.source] = 0
        for edge in sorted(self.edges, key=lambda e: e.source):
            if best[edge.source] >= 0:
                step = best[edge.source] + (edge.letter is not None)
                best[edge.target] = max(best[edge.target], step)
        return max(best[self.sink], 0)

    @cached_property
    def shift_tables(self) -> Dict[Tuple[int, ...], np.ndarray]:
        """Shift vector -> index permutation g -> g + shift on flat group indices"""
        group = (self.p,) * self.dim
        coords = np.indices(group).reshape(self.dim, -1) if self.dim else np.zeros((0, 1), dtype=np.int64)
        tables = {}
        for edge in self.edges:
            if edge.shift is not None and edge.shift not in tables:
                moved = (coords + np.array(edge.shift, dtype=np.int64)[:, None]) % self.p
                tables[edge.shift] = np.ravel_multi_index(tuple(moved), group) if self.dim else np.zeros(1, dtype=np.int64)
        return tables

    @cached_property
    def _edges_by_letter(self) -> Dict[Optional[int], List[AbpEdge]]:
        grouped: Dict[Optional[int], List[AbpEdge]] = {}
        for edge in sorted(self.edges, key=lambda e: e.source):
            grouped.setdefault(edge.letter, []).append(edge)
        return grouped

    def _apply(self, edges: Sequence[AbpEdge], states: np.ndarray, out: np.ndarray) -> np.ndarray:
        for edge in edges:
            moved = states[:, edge.source] * edge.weight
            if edge.shift is None:
                out[:, edge.target] = (out[:, edge.target] + moved) % self.p
            else:
                perm = self.shift_tables[edge.shift]
                out[:, edge.target, perm] = (out[:, edge.target, perm] + moved) % self.p
        return out

    def closure(self, states: np.ndarray) -> np.ndarray:
        """Follow letterless edges; states has shape (rows, num_nodes, group_size)"""
        # edges are sorted by source, so every node is final before it is read
        out = states.copy()
        return self._apply(self._edges_by_letter.get(None, []), out, out)

    def read(self, states: np.ndarray, letter: int) -> np.ndarray:
        """Move along the edges labelled with letter, then close"""
        out = np.zeros_like(states)
        return self.closure(self._apply(self._edges_by_letter.get(letter, []), states, out))

    def start(self) -> np.ndarray:
        states = np.zeros((1, self.num_nodes, self.group_size), dtype=np.int64)
        states[0, self.source, 0] = 1
        return self.closure(states)


@dataclass(frozen=True)
class Abp:
    """One group coordinate of an AbpGraph, optionally restricted to words of one length"""
    graph: AbpGraph
    coordinate: Tuple[int, ...] = ()
    degree: Optional[int] = None

    @property
    def p(self) -> int:
        return self.graph.p

    @property
    def coordinate_index(self) -> int:
        return GroupVector(self.coordinate, self.p).index


def _compress(candidates: np.ndarray, p: int) -> np.ndarray:
    """Basis of the row span, reduced on the columns some row touches"""
    rows = candidates.reshape(candidates.shape[0], -1)
    active = np.nonzero(np.any(rows != 0, axis=0))[0]
    if active.size == 0:
        return rows[:0]
    reduced = row_reduce_mod_p(rows[:, active], p)
    basis = np.zeros((reduced.shape[0], rows.shape[1]), dtype=np.int64)
    basis[:, active] = reduced
    return basis


def nonzero_coordinates(graph: AbpGraph, degree: Optional[int] = None,
                        mem_mb: Optional[int] = None) -> FrozenSet[int]:
    """
    Flat group indices j whose noncommutative polynomial at the sink is nonzero.

    For every word length the span of the state vectors reached by all words
    of that length is kept as a basis; a coordinate is nonzero iff some basis
    vector has a nonzero sink entry at some inspected length.
    """
    p = graph.p
    shape = (graph.num_nodes, graph.group_size)
    last = graph.max_word_length if degree is None else min(degree, graph.max_word_length)
    if degree is not None and degree > graph.max_word_length:
        return frozenset()
    budget = settings.memory_budget_bytes(mem_mb)
    if graph.num_nodes * graph.group_size * 8 > budget:
        raise ResourceLimitError(f"branching program state of {graph.num_nodes} nodes x {graph.group_size} "
                                 f"group elements exceeds the memory budget")
    basis = _compress(graph.start(), p)
    nonzero = set()
    for length in range(last + 1):
        if degree is None or length == degree:
            sink = basis.reshape((-1,) + shape)[:, graph.sink]
            nonzero.update(int(j) for j in np.nonzero(np.any(sink != 0, axis=0))[0])
        if length == last or basis.shape[0] == 0:
            break
        states = basis.reshape((-1,) + shape)
        if states.nbytes * max(graph.letters, 1) > budget:
            raise ResourceLimitError(f"branching program basis of {states.shape[0]} vectors exceeds the memory budget")
        images = [graph.read(states, letter) for letter in range(graph.letters)]
        basis = _compress(np.concatenate(images, axis=0), p) if images else basis[:0]
        logger.debug(f"word length {length + 1}: basis of {basis.shape[0]} state vectors")
    return frozenset(nonzero)


def rs_identity_test(a: Abp, p) -> bool:
    """True iff the noncommutative polynomial computed by a is not identically zero"""
    if as_prime(p) != a.p:
        raise UsageError(f"branching program is over Z_{a.p}, not Z_{p}")
    return a.coordinate_index in nonzero_coordinates(a.graph, a.degree)


class _AbpAssembler:
    def __init__(self, f: Circuit, p: int, vectors: Optional[Sequence[GroupVector]]):
        self.f = f
        self.p = p
        self.vectors = vectors
        self.num_nodes = 0
        self.edges: List[AbpEdge] = []

    def node(self) -> int:
        self.num_nodes += 1
        return self.num_nodes - 1

    def edge(self, source: int, target: int, weight: int = 1, letter: Optional[int] = None,
             shift: Optional[Tuple[int, ...]] = None) -> None:
        if weight % self.p:
            self.edges.append(AbpEdge(source, target, weight % self.p, letter, shift))

    def build(self, i: int) -> Tuple[int, int]:
        """Entry and exit node of the sub-program for gate i, allocated in topological order"""
        gate = self.f.nodes[i]
        if isinstance(gate, Input):
            entry = self.node()
            if self.vectors is None:
                exit_ = self.node()
                self.edge(entry, exit_, letter=gate.var)
                return entry, exit_
            middle, exit_ = self.node(), self.node()
            self.edge(entry, middle, letter=gate.var)
            self.edge(middle, exit_, 1)
            self.edge(middle, exit_, self.p - 1, shift=self.vectors[gate.var].coords)
            return entry, exit_
        if isinstance(gate, Const):
            entry, exit_ = self.node(), self.node()
            self.edge(entry, exit_, gate.value)
            return entry, exit_
        if isinstance(gate, Mul):
            left_in, left_out = self.build(gate.left)
            right_in, right_out = self.build(gate.right)
            self.edge(left_out, right_in)
            return left_in, right_out
        entry = self.node()
        exits = []
        for child in gate.children:
            child_in, child_out = self.build(child)
            self.edge(entry, child_in)
            exits.append(child_out)
        exit_ = self.node()
        for child_out in exits:
            self.edge(child_out, exit_)
        return entry, exit_


def formula_graph(f: Circuit, p, vectors: Optional[Sequence[GroupVector]] = None) -> AbpGraph:
    """
    Layered graph of a formula whose inputs are noncommutative letters.

    With vectors, every input x_i is read as the letter y_i times
    (p-1)[vectors[i]] + [0].
    """
    p = as_prime(p)
    if not f.is_formula:
        raise UsageError("branching programs are built for formulas only (fan-out at most one)")
    if vectors is not None and len(vectors) < f.n:
        raise UsageError(f"{len(vectors)} substitution vectors for {f.n} variables")
    dim = vectors[0].dim if vectors else 0
    assembler = _AbpAssembler(f, p, vectors)
    source, sink = assembler.build(f.require_output())
    return AbpGraph(p, dim, assembler.num_nodes, tuple(assembler.edges), source, sink, f.n)


def formula_to_abp(f: Circuit, p, vectors: Optional[Sequence[GroupVector]] = None,
                   degree: Optional[int] = None) -> List[Abp]:
    """
    One ABP per group-algebra coordinate, all sharing one layered graph.

    Args:
        f: Formula; its variables are the letters
        p: Prime modulus
        vectors: Optional substitution vectors in Z_p^d, one per variable
        degree: Optional word length to restrict to

    Returns:
        p^d ABPs in flat coordinate order (a single ABP without vectors)
    """
    graph = formula_graph(f, p, vectors)
    return [Abp(graph, GroupVector.from_index(j, graph.p, graph.dim).coords if graph.dim else (), degree)
            for j in range(graph.group_size)]


def noncommutative_expand(f: Circuit, p, cap: Optional[int] = None) -> Dict[Word, int]:
    """Word -> nonzero coefficient mod p of a circuit read with noncommuting variables"""
    p = as_prime(p)
    cap = settings.ORACLE_CAP if cap is None else cap
    reachable = f.reachable
    tables: Dict[int, Dict[Word, int]] = {}
    for i, gate in enumerate(f.nodes):
        if not reachable[i]:
            continue
        if isinstance(gate, Input):
            words = {(gate.var,): 1}
        elif isinstance(gate, Const):
            words = {(): gate.value % p} if gate.value % p else {}
        elif isinstance(gate, Add):
            words = {}
            for child in gate.children:
                for w, c in tables[child].items():
                    words[w] = (words.get(w, 0) + c) % p
        else:
            words = {}
            for wl, cl in tables[gate.left].items():
                for wr, cr in tables[gate.right].items():
                    words[wl + wr] = (words.get(wl + wr, 0) + cl * cr) % p
        words = {w: c for w, c in words.items() if c}
        if len(words) > cap:
            raise ResourceLimitError(f"noncommutative expansion exceeds cap of {cap} words at node {i}")
        tables[i] = words
    return tables[f.require_output()]


def expand_abp(a: Abp, cap: Optional[int] = None) -> Dict[Word, int]:
    """Word map of one ABP by path enumeration"""
    graph = a.graph
    p = graph.p
    cap = settings.ORACLE_CAP if cap is None else cap
    target = a.coordinate_index
    shifts = graph.shift_tables
    at: List[Dict[Tuple[Word, int], int]] = [dict() for _ in range(graph.num_nodes)]
    at[graph.source][((), 0)] = 1
    for edge in sorted(graph.edges, key=lambda e: e.source):
        bucket = at[edge.target]
        for (word, g), c in at[edge.source].items():
            key = (word + (edge.letter,) if edge.letter is not None else word,
                   int(shifts[edge.shift][g]) if edge.shift is not None else g)
            bucket[key] = (bucket.get(key, 0) + c * edge.weight) % p
        if len(bucket) > cap:
            raise ResourceLimitError(f"branching program expansion exceeds cap of {cap} words")
    words: Dict[Word, int] = {}
    for (word, g), c in at[graph.sink].items():
        if g == target and c and (a.degree is None or len(word) == a.degree):
            words[word] = c
    return words
