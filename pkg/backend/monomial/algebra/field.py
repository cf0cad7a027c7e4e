"""
Finite Field Module

Exact arithmetic in Z_p and in quotient rings Z_p[y]/(r(y)).

Key Features:
- Deterministic primality check for the modulus
- Polynomial helpers over Z_p (coefficient tuples, lowest degree first)
- QuotientRing: vectorized coefficient arithmetic shared by Z_p, GF(p^l) and
  the non-field rings used by the modulus-polynomial identity test
- ExtField: GF(p^l) built on the lexicographically smallest monic irreducible
"""

import itertools
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached

from ..utils.errors import UsageError
from ..utils.logger import algebra_logger as logger

Poly = Tuple[int, ...]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (moduli here are small)"""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n"""
    candidate = max(2, n)
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class PrimeModulus:
    """A small prime p"""
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise UsageError(f"modulus must be a prime >= 2, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def __int__(self) -> int:
        return self.p


def as_prime(p) -> int:
    """Accept an int or a PrimeModulus and return the validated int"""
    if isinstance(p, PrimeModulus):
        return p.p
    return PrimeModulus(int(p)).p


# --- polynomials over Z_p -------------------------------------------------

def poly_trim(a: Sequence[int], p: int) -> Poly:
    coeffs = [int(c) % p for c in a]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out, p)


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[Poly, Poly]:
    """Quotient and remainder of a by a nonzero b"""
    a = list(poly_trim(a, p))
    b = poly_trim(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quotient = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % p
        quotient[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        a = list(poly_trim(a, p))
    return poly_trim(quotient, p), tuple(a)


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    return poly_divmod(a, b, p)[1]


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = poly_trim(a, p), poly_trim(b, p)
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple((c * inv) % p for c in a)


def poly_powmod(base: Sequence[int], exponent: int, modulus: Sequence[int], p: int) -> Poly:
    result: Poly = (1,)
    base = poly_mod(base, modulus, p)
    while exponent:
        if exponent & 1:
            result = poly_mod(poly_mul(result, base, p), modulus, p)
        base = poly_mod(poly_mul(base, base, p), modulus, p)
        exponent >>= 1
    return poly_mod(result, modulus, p)


def poly_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(degree: int, p: int):
    """All monic polynomials of a degree, lexicographic in (c_{deg-1}, ..., c_0)"""
    for high_first in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(high_first)) + (1,)


def _prime_factors(n: int) -> List[int]:
    factors, d = [], 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """
    Irreducibility of a monic polynomial over Z_p.

    Degree <= 4: no roots, then trial division by every monic polynomial of
    degree 2..deg/2. Higher degrees use Rabin's test.
    """
    poly = poly_trim(poly, p)
    degree = len(poly) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    if any(poly_eval(poly, x, p) == 0 for x in range(p)):
        return False
    if degree <= 4:
        for d in range(2, degree // 2 + 1):
            for divisor in _monic_polys(d, p):
                if not poly_mod(poly, divisor, p):
                    return False
        return True
    x = (0, 1)
    for q in _prime_factors(degree):
        h = poly_sub(poly_powmod(x, p ** (degree // q), poly, p), x, p)
        if len(poly_gcd(poly, h, p)) != 1:
            return False
    return not poly_sub(poly_powmod(x, p ** degree, poly, p), x, p)


@cached(LRUCache(maxsize=256))
def smallest_irreducible(p: int, ell: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree ell over Z_p"""
    for candidate in _monic_polys(ell, p):
        if is_irreducible(candidate, p):
            return candidate
    raise AssertionError(f"no irreducible polynomial of degree {ell} over Z_{p}")  # unreachable


# --- coefficient rings ----------------------------------------------------

@dataclass(frozen=True)
class QuotientRing:
    """
    Z_p[y]/(r(y)) for a monic r of degree ell >= 1.

    Elements are int64 arrays whose last axis has length ell (coefficients of
    1, y, ..., y^(ell-1)); every method broadcasts over leading axes.
    Z_p itself is the quotient by r(y) = y.
    """
    p: int
    modulus: Poly
    _tail: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        modulus = poly_trim(self.modulus, self.p)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise UsageError(f"quotient modulus must be monic of degree >= 1, got {self.modulus}")
        object.__setattr__(self, "modulus", modulus)
        # y^ell == -(r_0 + r_1 y + ... + r_{ell-1} y^{ell-1})
        tail = np.array([(-c) % self.p for c in modulus[:-1]], dtype=np.int64)
        object.__setattr__(self, "_tail", tail)

    @property
    def ell(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p ** self.ell

    def zero(self) -> np.ndarray:
        return np.zeros(self.ell, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.from_int(1)

    def from_int(self, c: int) -> np.ndarray:
        out = np.zeros(self.ell, dtype=np.int64)
        out[0] = int(c) % self.p
        return out

    def from_poly(self, coeffs: Sequence[int]) -> np.ndarray:
        reduced = poly_mod(coeffs, self.modulus, self.p)
        out = np.zeros(self.ell, dtype=np.int64)
        out[:len(reduced)] = reduced
        return out

    def to_poly(self, a: np.ndarray) -> Poly:
        return poly_trim(np.asarray(a).tolist(), self.p)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return (-a) % self.p

    def reduce(self, wide: np.ndarray) -> np.ndarray:
        """Reduce arrays whose last axis holds coefficients of degree < 2*ell - 1"""
        wide = np.array(wide, dtype=np.int64) % self.p
        ell = self.ell
        for k in range(wide.shape[-1] - 1, ell - 1, -1):
            top = wide[..., k]
            if np.any(top):
                wide[..., k - ell:k] = (wide[..., k - ell:k] + top[..., None] * self._tail) % self.p
        return wide[..., :ell]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Broadcasting product of coefficient arrays"""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        ell = self.ell
        if ell == 1:
            return (a * b) % self.p
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (2 * ell - 1,)
        wide = np.zeros(shape, dtype=np.int64)
        for i in range(ell):
            ai = a[..., i:i + 1]
            if np.any(ai):
                wide[..., i:i + ell] = (wide[..., i:i + ell] + ai * b) % self.p
        return self.reduce(wide)

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.broadcast_to(self.one(), np.shape(a)).copy()
        base = np.array(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(np.asarray(a) % self.p)

    def random(self, rng: np.random.Generator, shape: Tuple[int, ...] = ()) -> np.ndarray:
        return rng.integers(0, self.p, size=tuple(shape) + (self.ell,), dtype=np.int64)


@dataclass(frozen=True)
class ExtField(QuotientRing):
    """GF(p^ell) as Z_p[y]/(r(y)) with r irreducible"""

    def __post_init__(self):
        super().__post_init__()
        if not is_irreducible(self.modulus, self.p):
            raise UsageError(f"modulus {self.modulus} is not irreducible over Z_{self.p}")

    def inverse(self, a: np.ndarray) -> np.ndarray:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in GF(p^l)")
        return self.pow(a, self.order - 2)


@cached(LRUCache(maxsize=64))
def ext_field_make(p, ell: int) -> ExtField:
    """
    Build GF(p^ell) from the lexicographically smallest monic irreducible of
    degree ell. ell = 1 gives Z_p (modulus y).
    """
    p = as_prime(p)
    if ell < 1:
        raise UsageError(f"extension degree must be >= 1, got {ell}")
    modulus = smallest_irreducible(p, ell)
    logger.debug(f"GF({p}^{ell}) modulus {modulus}")
    return ExtField(p, modulus)


def prime_field(p) -> ExtField:
    """Z_p as a coefficient ring"""
    return ext_field_make(p, 1)


def extension_degree_for(p: int, minimum_order: int) -> int:
    """Least ell with p^ell >= minimum_order"""
    ell = 1
    while p ** ell < minimum_order:
        ell += 1
    return ell


def random_monic(p: int, degree: int, rng: np.random.Generator) -> Poly:
    low = rng.integers(0, p, size=degree).tolist()
    return tuple(int(c) for c in low) + (1,)
