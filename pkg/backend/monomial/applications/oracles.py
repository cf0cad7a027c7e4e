"""
Independent graph oracles for desk-scale validation of the encoders.
"""

from itertools import combinations

from ..utils.errors import ResourceLimitError, UsageError
from ..utils.logger import applications_logger as logger
from .graph import Graph

MAX_ORACLE_VERTICES = 12


def _guard(g: Graph, k: int, name: str) -> None:
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    if g.m > MAX_ORACLE_VERTICES:
        raise ResourceLimitError(f"{name} is limited to {MAX_ORACLE_VERTICES} vertices, graph has {g.m}")


def path_oracle(g: Graph, k: int) -> bool:
    """Does G have a simple path on k vertices (exhaustive DFS)"""
    _guard(g, k, "path oracle")
    if k > g.m:
        return False

    def extend(v: int, visited: set, length: int) -> bool:
        if length == k:
            return True
        for w in g.neighbors(v):
            if w not in visited:
                visited.add(w)
                if extend(w, visited, length + 1):
                    return True
                visited.discard(w)
        return False

    found = any(extend(v, {v}, 1) for v in range(1, g.m + 1))
    logger.debug(f"path oracle: k={k} on m={g.m} -> {found}")
    return found


def clique_oracle(g: Graph, k: int) -> bool:
    """Does G have k pairwise adjacent vertices (subset enumeration)"""
    _guard(g, k, "clique oracle")
    found = any(all(g.has_edge(i, j) for i, j in combinations(subset, 2))
                for subset in combinations(range(1, g.m + 1), k))
    logger.debug(f"clique oracle: k={k} on m={g.m} -> {found}")
    return found
