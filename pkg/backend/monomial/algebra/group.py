"""
Elementary Abelian Group Module

Vectors of Z_p^d and their flat indices inside group-algebra tables.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..utils.errors import ShapeError, UsageError
from .linalg import matrix_rank_mod_p


@dataclass(frozen=True)
class GroupVector:
    """A d-dimensional vector over Z_p; the group operation is coordinatewise addition"""
    coords: Tuple[int, ...]
    p: int

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if any(c < 0 or c >= self.p for c in coords):
            raise UsageError(f"coordinates of {coords} must lie in [0, {self.p})")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, p: int, dim: int) -> "GroupVector":
        return cls((0,) * dim, p)

    @classmethod
    def basis(cls, p: int, dim: int, axis: int) -> "GroupVector":
        coords = [0] * dim
        coords[axis] = 1
        return cls(tuple(coords), p)

    @classmethod
    def from_index(cls, index: int, p: int, dim: int) -> "GroupVector":
        return cls(tuple(int(c) for c in np.unravel_index(index, (p,) * dim)), p)

    @property
    def index(self) -> int:
        """Flat position (first coordinate most significant)"""
        if self.dim == 0:
            return 0
        return int(np.ravel_multi_index(self.coords, (self.p,) * self.dim))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _check_compatible(a: GroupVector, b: GroupVector) -> None:
    if a.p != b.p or a.dim != b.dim:
        raise ShapeError(f"group vectors {a} (p={a.p}) and {b} (p={b.p}) are incompatible")


def group_vec_mul(a: GroupVector, b: GroupVector) -> GroupVector:
    """Group product: coordinatewise sum mod p"""
    _check_compatible(a, b)
    return GroupVector(tuple((x + y) % a.p for x, y in zip(a.coords, b.coords)), a.p)


def group_vec_pow(v: GroupVector, e: int) -> GroupVector:
    """e-fold product; v^p is the identity"""
    return GroupVector(tuple((c * e) % v.p for c in v.coords), v.p)


def rank_mod_p(vectors: Sequence[GroupVector]) -> int:
    """
    Rank over Z_p of a list of vectors of the same dimension.

    Gauss-Jordan elimination scaling each pivot, the first nonzero entry of its
    row, by its inverse mod p. Row order never changes the rank.
    """
    if not vectors:
        return 0
    p = vectors[0].p
    return matrix_rank_mod_p(np.array([v.coords for v in vectors], dtype=np.int64), p)


def linearly_independent(vectors: Iterable[GroupVector]) -> bool:
    vectors = list(vectors)
    return rank_mod_p(vectors) == len(vectors)
