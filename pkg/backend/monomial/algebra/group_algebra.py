"""
Group Algebra Module

Elements of R[Z_p^d] stored as dense tables, R a coefficient ring from field.py.

Key Features:
- Immutable GroupAlgebraElement with a (p^d, l) coefficient table
- Addition, scaling, convolution product and square-and-multiply powers
- Survival expansion of products of (p-1)[v] + [0] over independent vectors
"""

import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.errors import PreconditionError, ShapeError, UsageError
from .convolution import convolve
from .field import QuotientRing, as_prime, prime_field
from .group import GroupVector, rank_mod_p

Coefficient = Union[int, np.ndarray, Sequence[int]]


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """
    Sum over x in Z_p^d of a_x [x] with a_x in the coefficient ring.

    Rows of `table` follow the flat order of GroupVector.index.
    """
    p: int
    dim: int
    ring: QuotientRing
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        expected = (self.p ** self.dim, self.ring.ell)
        if table.shape != expected:
            raise ShapeError(f"coefficient table has shape {table.shape}, expected {expected}")
        table %= self.p
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def zero(cls, p, dim: int, ring: Optional[QuotientRing] = None) -> "GroupAlgebraElement":
        p = as_prime(p)
        ring = ring or prime_field(p)
        return cls(p, dim, ring, np.zeros((p ** dim, ring.ell), dtype=np.int64))

    @classmethod
    def identity(cls, p, dim: int, ring: Optional[QuotientRing] = None) -> "GroupAlgebraElement":
        return cls.from_terms(p, dim, [(1, (0,) * dim)], ring)

    @classmethod
    def from_terms(cls, p, dim: int, terms: Iterable[Tuple[Coefficient, Union[GroupVector, Sequence[int]]]],
                   ring: Optional[QuotientRing] = None) -> "GroupAlgebraElement":
        """Build from (coefficient, vector) pairs; repeated vectors accumulate"""
        p = as_prime(p)
        ring = ring or prime_field(p)
        table = np.zeros((p ** dim, ring.ell), dtype=np.int64)
        for coef, vector in terms:
            if not isinstance(vector, GroupVector):
                vector = GroupVector(tuple(vector), p)
            if vector.dim != dim or vector.p != p:
                raise ShapeError(f"vector {vector} does not live in Z_{p}^{dim}")
            table[vector.index] = (table[vector.index] + _coefficient(coef, ring)) % p
        return cls(p, dim, ring, table)

    @property
    def size(self) -> int:
        return self.p ** self.dim

    def coefficient(self, vector: Union[GroupVector, Sequence[int]]) -> np.ndarray:
        if not isinstance(vector, GroupVector):
            vector = GroupVector(tuple(vector), self.p)
        return self.table[vector.index]

    def support(self) -> Dict[GroupVector, Tuple[int, ...]]:
        """Nonzero coefficients keyed by vector; coefficients as tuples of length l"""
        rows = np.nonzero(np.any(self.table != 0, axis=1))[0]
        return {GroupVector.from_index(int(i), self.p, self.dim): tuple(int(c) for c in self.table[i])
                for i in rows}

    def is_zero(self) -> bool:
        return not np.any(self.table)

    def embed(self, ring: QuotientRing) -> "GroupAlgebraElement":
        """Lift a Z_p-coefficient element into a larger coefficient ring"""
        if self.ring.ell != 1 or ring.p != self.p:
            raise UsageError("only Z_p-coefficient elements can be embedded")
        table = np.zeros((self.size, ring.ell), dtype=np.int64)
        table[:, 0] = self.table[:, 0]
        return GroupAlgebraElement(self.p, self.dim, ring, table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.p, self.dim, self.ring) == (other.p, other.dim, other.ring) and \
            np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.p, self.dim, self.table.tobytes()))

    def __add__(self, other):
        return ga_add(self, other)

    def __sub__(self, other):
        return ga_add(self, ga_scale(-1, other))

    def __neg__(self):
        return ga_scale(-1, self)

    def __mul__(self, other):
        return ga_mul(self, other)

    def __repr__(self) -> str:
        terms = ", ".join(f"{c}{v}" for v, c in self.support().items())
        return f"GroupAlgebraElement(p={self.p}, d={self.dim}, {{{terms}}})"


def _coefficient(coef: Coefficient, ring: QuotientRing) -> np.ndarray:
    if isinstance(coef, (int, np.integer)):
        return ring.from_int(int(coef))
    arr = np.asarray(coef, dtype=np.int64)
    if arr.shape != (ring.ell,):
        raise ShapeError(f"coefficient {coef!r} is not an element of a ring with l={ring.ell}")
    return arr % ring.p


def _check_pair(u: GroupAlgebraElement, v: GroupAlgebraElement) -> None:
    if u.p != v.p or u.dim != v.dim:
        raise UsageError(f"group algebra mismatch: (p={u.p}, d={u.dim}) vs (p={v.p}, d={v.dim})")
    if u.ring != v.ring:
        raise UsageError(f"coefficient ring mismatch: {u.ring.modulus} vs {v.ring.modulus}")


def ga_add(u: GroupAlgebraElement, v: GroupAlgebraElement) -> GroupAlgebraElement:
    _check_pair(u, v)
    return GroupAlgebraElement(u.p, u.dim, u.ring, u.table + v.table)


def ga_scale(w: Coefficient, u: GroupAlgebraElement) -> GroupAlgebraElement:
    """Multiply every coefficient by a ring scalar"""
    scalar = _coefficient(w, u.ring)
    return GroupAlgebraElement(u.p, u.dim, u.ring, u.ring.mul(u.table, scalar))


def ga_mul(u: GroupAlgebraElement, v: GroupAlgebraElement, engine: str = "auto") -> GroupAlgebraElement:
    """Group convolution: the coefficient of z is the sum of a_x b_y over x + y = z"""
    _check_pair(u, v)
    table = convolve(u.table, v.table, u.p, u.dim, u.ring, engine=engine)
    return GroupAlgebraElement(u.p, u.dim, u.ring, table)


def ga_pow(u: GroupAlgebraElement, e: int, engine: str = "auto") -> GroupAlgebraElement:
    if e < 0:
        raise UsageError(f"exponent must be non-negative, got {e}")
    result = GroupAlgebraElement.identity(u.p, u.dim, u.ring)
    base = u
    while e:
        if e & 1:
            result = ga_mul(result, base, engine)
        e >>= 1
        if e:
            base = ga_mul(base, base, engine)
    return result


def substitution_element(vector: GroupVector, ring: Optional[QuotientRing] = None) -> GroupAlgebraElement:
    """(p-1)[v] + [0], the image of a variable under the testers' substitution"""
    p = vector.p
    return GroupAlgebraElement.from_terms(p, vector.dim, [(p - 1, vector), (1, GroupVector.zero(p, vector.dim))], ring)


@dataclass(frozen=True)
class SurvivalExpansion:
    """Nonzero support of a product of substitution elements"""
    entries: Tuple[Tuple[int, GroupVector], ...]

    def identity_coefficient(self) -> int:
        for coef, vector in self.entries:
            if vector.is_zero():
                return coef
        return 0

    def to_element(self) -> GroupAlgebraElement:
        p, dim = self.entries[0][1].p, self.entries[0][1].dim
        return GroupAlgebraElement.from_terms(p, dim, self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def survival_expand(vectors: Sequence[GroupVector], exponents: Sequence[int]) -> SurvivalExpansion:
    """
    Expand the product of ((p-1)[v_i] + [0])^(m_i) for independent v_i.

    The term for (j_1, ..., j_t) with 0 <= j_i <= m_i is
    prod C(m_i, j_i) (p-1)^(j_i) at the vector sum j_i v_i.
    """
    if len(vectors) != len(exponents) or not vectors:
        raise UsageError("survival_expand needs one exponent per vector and at least one vector")
    p, dim = vectors[0].p, vectors[0].dim
    if any(m < 1 or m >= p for m in exponents):
        raise UsageError(f"exponents must lie in [1, {p}), got {list(exponents)}")
    if rank_mod_p(vectors) != len(vectors):
        raise PreconditionError("substitution vectors are linearly dependent over Z_p")

    entries: List[Tuple[int, GroupVector]] = []
    for choice in itertools.product(*(range(m + 1) for m in exponents)):
        coef = 1
        coords = [0] * dim
        for j, m, v in zip(choice, exponents, vectors):
            coef = coef * comb(m, j) * pow(p - 1, j, p) % p
            coords = [(c + j * x) % p for c, x in zip(coords, v.coords)]
        entries.append((coef, GroupVector(tuple(coords), p)))
    return SurvivalExpansion(tuple(entries))
