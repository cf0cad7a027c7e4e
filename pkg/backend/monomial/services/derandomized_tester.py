"""
Derandomized Tester Module

Deterministic p-monomial detection for formulas.

For every coloring tau of a perfect hash family, x_i is replaced by
y_i * ((p-1)[e_tau(i)] + [0]) with e_1..e_k the standard basis of Z_p^k.
A coloring is positive iff some coordinate polynomial f_j(y) of the grade-k
part is nonzero. The noncommutative identity test on the formula's branching
program rules colorings out; survivors are confirmed by evaluating the
colored formula on every point of Z_p^n with at most k nonzero coordinates.
"""

import time
from itertools import combinations, product
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.convolution import convolve
from ..algebra.field import as_prime, prime_field
from ..algebra.group import GroupVector
from ..circuit.evaluator import eval_circuit
from ..circuit.expansion import degree_bound
from ..circuit.models import Circuit
from ..schemas import TestReport, TrialOutcome
from ..tasks.runner import run_parallel
from ..utils.config import settings
from ..utils.errors import PreconditionError, ResourceLimitError, UsageError
from ..utils.logger import tester_logger as logger
from ..utils.storage import StorageService
from .abp import formula_graph, nonzero_coordinates
from .perfect_hash import build_phf
from .randomized_tester import check_memory

Coloring = Tuple[int, ...]


def coloring_vectors(coloring: Coloring, p: int, k: int) -> List[GroupVector]:
    return [GroupVector.basis(p, k, color) for color in coloring]


def hitting_set_size(n: int, p: int, k: int) -> int:
    return sum(comb(n, s) * (p - 1) ** s for s in range(min(n, k) + 1))


def hitting_points(n: int, p: int, k: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    """Points of Z_p^n with at most k nonzero coordinates, in chunks of rows"""
    rows: List[np.ndarray] = []
    for s in range(min(n, k) + 1):
        values = np.array(list(product(range(1, p), repeat=s)), dtype=np.int64).reshape((p - 1) ** s, s)
        for support in combinations(range(n), s):
            block = np.zeros((values.shape[0], n), dtype=np.int64)
            block[:, list(support)] = values
            rows.append(block)
            if sum(r.shape[0] for r in rows) >= chunk:
                yield np.concatenate(rows)
                rows = []
    if rows:
        yield np.concatenate(rows)


class PointBatchRing:
    """
    Graded Z_p[Z_p^k] values at a batch of tag points.

    Values are arrays of shape (points, degree + 1, p^k, 1).
    """

    def __init__(self, p: int, dim: int, degree: int, points: int, engine: str = "auto"):
        self.p = p
        self.dim = dim
        self.degree = degree
        self.points = points
        self.engine = engine
        self.field = prime_field(p)

    def zero(self) -> np.ndarray:
        return np.zeros((self.points, self.degree + 1, self.p ** self.dim, 1), dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.from_int(1)

    def from_int(self, c: int) -> np.ndarray:
        value = self.zero()
        value[:, 0, 0, 0] = int(c) % self.p
        return value

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.zero()
        live_a = [i for i in range(self.degree + 1) if a[:, i].any()]
        live_b = [j for j in range(self.degree + 1) if b[:, j].any()]
        for i in live_a:
            for j in live_b:
                if i + j <= self.degree:
                    term = convolve(a[:, i], b[:, j], self.p, self.dim, self.field, self.engine)
                    out[:, i + j] = (out[:, i + j] + term) % self.p
        return out

    def scale(self, a: np.ndarray, s) -> np.ndarray:
        return (a * int(s)) % self.p

    def is_zero(self, a: np.ndarray) -> bool:
        return not a.any()

    def leaf(self, tag_values: np.ndarray, vector: GroupVector) -> np.ndarray:
        """y * ((p-1)[v] + [0]) at grade 1, with y given per point"""
        value = self.zero()
        if self.degree >= 1:
            value[:, 1, 0, 0] = tag_values % self.p
            value[:, 1, vector.index, 0] = (value[:, 1, vector.index, 0] + (self.p - 1) * tag_values) % self.p
        return value


def colored_is_nonzero(f: Circuit, p: int, k: int, coloring: Coloring, engine: str = "auto",
                       mem_mb: Optional[int] = None) -> bool:
    """Exact test: does some f_j of the colored formula have a nonzero value on the hitting set"""
    vectors = coloring_vectors(coloring, p, k)
    per_point = (k + 1) * (p ** k) * 8 * max(f.size, 1)
    budget = settings.memory_budget_bytes(mem_mb)
    if 4 * per_point > budget:
        raise ResourceLimitError(
            f"one confirmation point needs {4 * per_point // 2**20} MiB (p^k={p ** k}, gates={f.size}); "
            f"budget is {budget // 2**20} MiB")
    chunk = min(4096, budget // (4 * per_point))
    for points in hitting_points(f.n, p, k, chunk):
        ring = PointBatchRing(p, k, k, points.shape[0], engine)
        leaves = [ring.leaf(points[:, i], vectors[i]) for i in range(f.n)]
        value = eval_circuit(f, leaves, ring)
        if value[:, k].any():
            return True
    return False


def _check_formula(f: Circuit, k: int) -> None:
    f.require_output()
    if not f.formula_flag().is_formula:
        raise UsageError("the deterministic tester accepts formulas only (fan-out at most one); "
                         "use the randomized tester (rt_mlm, --mode rand) for general circuits")
    if degree_bound(f) < k:
        raise PreconditionError(f"formula degree bound {degree_bound(f)} is below k={k}; pad the formula")


def dt_mlm(f: Circuit, p, k: int, threads: int = 1, instrument: bool = False,
           storage: Optional[StorageService] = None, engine: str = "auto",
           mem_mb: Optional[int] = None) -> TestReport:
    """
    Decide deterministically whether the expansion of formula f has a
    degree-k p-monomial with nonzero coefficient mod p.

    Args:
        f: Formula
        p: Prime modulus
        k: Target degree
        threads: Worker threads over colorings
        instrument: Examine every coloring and record each verdict in stats
        storage: Storage service for the perfect hash family cache
        engine: Convolution engine
        mem_mb: Table memory cap in MiB; defaults to settings.MEM_MB

    Returns:
        TestReport; per_trial holds one outcome per examined coloring

    Raises:
        ResourceLimitError: a coloring's tables exceed the memory budget
    """
    started = time.perf_counter()
    p = as_prime(p)
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    _check_formula(f, k)
    check_memory(p, k, 1, k, mem_mb)
    n = f.n
    if n <= k:
        colorings: Sequence[Coloring] = [tuple(range(n))]
    else:
        colorings = build_phf(n, k, storage).functions
    points = hitting_set_size(n, p, k)
    logger.info(f"dt_mlm: {len(colorings)} colorings, x_i -> y_i(({p - 1})[e_tau(i)] + [0]) in "
                f"Z_{p}[Z_{p}^{k}], {points} confirmation points per surviving coloring")
    filtered = []

    def examine(index: int) -> TrialOutcome:
        t0 = time.perf_counter()
        coloring = colorings[index]
        graph = formula_graph(f, p, coloring_vectors(coloring, p, k))
        if nonzero_coordinates(graph, degree=k, mem_mb=mem_mb):
            verdict = colored_is_nonzero(f, p, k, coloring, engine, mem_mb)
        else:
            filtered.append(index)
            verdict = False
        micros = int((time.perf_counter() - t0) * 1e6)
        logger.debug(f"coloring {index}: {'nonzero' if verdict else 'zero'} in {micros} us")
        return TrialOutcome(trial=index, verdict=verdict, micros=micros)

    stop = None if instrument else (lambda o: o.verdict)
    outcomes = run_parallel(examine, range(len(colorings)), threads, stop=stop)
    hit = next((o for o in outcomes if o.verdict), None)
    stats = {
        "colorings": len(colorings),
        "examined": len(outcomes),
        "ruled_out_noncommutative": len(set(filtered)),
        "hitting_points": points,
        "gates": f.size,
    }
    if instrument:
        stats["coloring_verdicts"] = [o.verdict for o in outcomes]
    report = TestReport(
        answer="yes" if hit else "no",
        tester="dt_mlm",
        trials=len(outcomes),
        per_trial=outcomes,
        elapsed=time.perf_counter() - started,
        config={"p": p, "k": k, "threads": threads, "instrument": instrument, "engine": engine,
                "mem_mb": mem_mb},
        witness=f"coloring {hit.trial}: {list(colorings[hit.trial])}" if hit else None,
        stats=stats,
    )
    logger.info(f"dt_mlm: {report.answer} after {report.trials} coloring(s) in {report.elapsed:.3f}s")
    return report
