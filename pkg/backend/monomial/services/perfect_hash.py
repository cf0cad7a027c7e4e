"""
Perfect Hash Family Module

(n, k)-perfect hash families: colorings [n] -> [k] such that every k-subset
of [n] is colored injectively by at least one member.

Key Features:
- Identity coloring when n == k
- Greedy set cover over deterministic pseudo-random candidate colorings, with
  vectorized coverage counting, when C(n, k) is small
- Residue split for larger n: x -> x mod q over enough primes q < n, each
  composed with a (q, k)-family
- On-disk cache phf-n<k>-<n>.txt and an in-process LRU cache
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb, prod
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache

from ..algebra.field import is_prime
from ..utils.errors import UsageError
from ..utils.logger import tester_logger as logger
from ..utils.rng import make_rng
from ..utils.storage import StorageService

GREEDY_SUBSET_LIMIT = 200_000
CANDIDATES_PER_ROUND = 32

_family_cache: LRUCache = LRUCache(maxsize=128)


@dataclass(frozen=True)
class PerfectHashFamily:
    n: int
    k: int
    functions: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def separates(self, subset: Iterable[int]) -> bool:
        subset = list(subset)
        return any(len({f[x] for x in subset}) == len(subset) for f in self.functions)

    def injective_colorings(self, subset: Iterable[int]) -> List[int]:
        """Indices of the colorings injective on subset"""
        subset = list(subset)
        return [i for i, f in enumerate(self.functions) if len({f[x] for x in subset}) == len(subset)]

    def uncovered(self) -> List[Tuple[int, ...]]:
        """k-subsets no coloring separates (exhaustive)"""
        if self.k > self.n:
            return []
        subsets = _subsets(self.n, self.k)
        covered = np.zeros(len(subsets), dtype=bool)
        for f in self.functions:
            covered |= _injective_mask(np.asarray(f, dtype=np.int64), subsets)
        return [tuple(int(x) for x in row) for row in subsets[~covered]]

    def is_perfect(self) -> bool:
        return not self.uncovered()


def _subsets(n: int, k: int) -> np.ndarray:
    return np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)


def _injective_mask(coloring: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    colors = np.sort(coloring[subsets], axis=1)
    if colors.shape[1] < 2:
        return np.ones(colors.shape[0], dtype=bool)
    return np.all(np.diff(colors, axis=1) != 0, axis=1)


def _greedy_family(n: int, k: int) -> List[Tuple[int, ...]]:
    subsets = _subsets(n, k)
    uncovered = np.ones(len(subsets), dtype=bool)
    rng = make_rng(n * 1_000_003 + k)
    family: List[Tuple[int, ...]] = []
    while uncovered.any():
        candidates = rng.integers(0, k, size=(CANDIDATES_PER_ROUND, n))
        gains = [int(np.count_nonzero(_injective_mask(cand, subsets[uncovered]))) for cand in candidates]
        best = int(np.argmax(gains))
        if gains[best] == 0:
            # color the first uncovered subset injectively
            target = subsets[np.argmax(uncovered)]
            chosen = np.zeros(n, dtype=np.int64)
            chosen[target] = np.arange(k)
        else:
            chosen = candidates[best]
        uncovered &= ~_injective_mask(chosen, subsets)
        family.append(tuple(int(c) for c in chosen))
    return family


def _split_primes(n: int, k: int) -> Optional[List[int]]:
    """Primes k <= q < n whose product exceeds every product of pairwise differences"""
    target = (n - 1) ** (k * (k - 1) // 2)
    primes = []
    for q in range(max(k, 2), n):
        if is_prime(q):
            primes.append(q)
            if prod(primes) > target:
                return primes
    return None


def _construct(n: int, k: int) -> List[Tuple[int, ...]]:
    if k == 1:
        return [(0,) * n]
    if n == k:
        return [tuple(range(n))]
    if comb(n, k) <= GREEDY_SUBSET_LIMIT:
        return _greedy_family(n, k)
    primes = _split_primes(n, k)
    if primes is None:
        return _greedy_family(n, k)
    family = []
    for q in primes:
        for g in build_phf(q, k).functions:
            family.append(tuple(g[x % q] for x in range(n)))
    return family


def build_phf(n: int, k: int, storage: Optional[StorageService] = None, use_cache: bool = True) -> PerfectHashFamily:
    """
    Build (or load) an (n, k)-perfect hash family.

    Args:
        n: Universe size
        k: Number of colors, 1 <= k <= n
        storage: Storage service for the on-disk cache
        use_cache: Consult and fill the caches

    Returns:
        PerfectHashFamily separating every k-subset of range(n)
    """
    if not 1 <= k <= n:
        raise UsageError(f"perfect hash family needs 1 <= k <= n, got n={n}, k={k}")
    key = (n, k)
    if use_cache and key in _family_cache:
        return _family_cache[key]

    functions = None
    if use_cache and storage is not None:
        cached = storage.load_phf(n, k)
        if cached is not None:
            candidate = PerfectHashFamily(n, k, tuple(cached))
            if comb(n, k) > GREEDY_SUBSET_LIMIT or candidate.is_perfect():
                functions = cached
            else:
                logger.warning(f"cached ({n},{k}) family does not separate every subset; rebuilding")
    if functions is None:
        functions = _construct(n, k)
        if use_cache and storage is not None:
            storage.save_phf(n, k, functions)
    family = PerfectHashFamily(n, k, tuple(tuple(f) for f in functions))
    logger.debug(f"({n},{k})-perfect hash family with {len(family)} colorings")
    if use_cache:
        _family_cache[key] = family
    return family
