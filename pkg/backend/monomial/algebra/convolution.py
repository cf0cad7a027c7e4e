"""
Group Convolution Module

Products in the group algebra R[Z_p^d] on dense tables.

Key Features:
- Tables have shape (*batch, p^d, l): leading batch axes, the flattened group
  axis, then the coefficient axis of the ring R = Z_p[y]/(r)
- Naive engine: one cyclic shift of the second operand per support point of
  the first (cheap when either operand is sparse)
- Transform engine: length-p number-theoretic transform along every group
  axis modulo a prime q = 1 (mod p) large enough that the integer result is
  recovered exactly before reduction mod p
"""

from typing import Tuple

import numpy as np
from cachetools import LRUCache, cached

from ..utils.config import settings
from ..utils.errors import ShapeError, UsageError
from ..utils.logger import algebra_logger as logger
from .field import QuotientRing, is_prime

ENGINES = ("auto", "naive", "ntt")
_INT64_LIMIT = 2 ** 63


def _group_shape(p: int, dim: int) -> Tuple[int, ...]:
    return (p,) * dim


def _check_table(table: np.ndarray, p: int, dim: int, ring: QuotientRing) -> None:
    if table.ndim < 2 or table.shape[-2] != p ** dim or table.shape[-1] != ring.ell:
        raise ShapeError(f"table of shape {table.shape} does not match p^d={p ** dim}, l={ring.ell}")


def support_size(table: np.ndarray) -> int:
    """Number of group positions with a nonzero coefficient in any batch entry"""
    flat = table.reshape(-1, table.shape[-2], table.shape[-1])
    return int(np.count_nonzero(np.any(flat != 0, axis=(0, 2))))


def naive_convolve(a: np.ndarray, b: np.ndarray, p: int, dim: int, ring: QuotientRing) -> np.ndarray:
    """(a*b)[z] = sum_x a[x] b[z - x], iterating over the support of a"""
    ell = ring.ell
    group = _group_shape(p, dim)
    batch = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    b_grid = b.reshape(b.shape[:-2] + group + (ell,))
    axes = tuple(range(b_grid.ndim - dim - 1, b_grid.ndim - 1))
    out = np.zeros(batch + group + (ell,), dtype=np.int64)

    flat_a = a.reshape(-1, a.shape[-2], ell)
    active = np.nonzero(np.any(flat_a != 0, axis=(0, 2)))[0]
    for x in active:
        shift = tuple(int(c) for c in np.unravel_index(int(x), group))
        shifted = np.roll(b_grid, shift=shift, axis=axes) if dim else b_grid
        coef = a[..., x, :].reshape(a.shape[:-2] + (1,) * dim + (ell,))
        if ell == 1:
            out = (out + coef * shifted) % p
        else:
            out = (out + ring.mul(coef, shifted)) % p
    return out.reshape(batch + (p ** dim, ell))


@cached(LRUCache(maxsize=128))
def ntt_prime(p: int, bound: int) -> int:
    """Smallest prime q > bound with q = 1 (mod p)"""
    m = bound // p + 1
    while not is_prime(m * p + 1):
        m += 1
    return m * p + 1


@cached(LRUCache(maxsize=128))
def _dft_matrices(p: int, q: int) -> Tuple[np.ndarray, np.ndarray]:
    omega = next(w for w in (pow(g, (q - 1) // p, q) for g in range(2, q)) if w != 1)
    omega_inv = pow(omega, -1, q)
    p_inv = pow(p, -1, q)
    forward = np.array([[pow(omega, j * k, q) for k in range(p)] for j in range(p)], dtype=np.int64)
    inverse = np.array([[p_inv * pow(omega_inv, j * k, q) % q for k in range(p)] for j in range(p)],
                       dtype=np.int64)
    return forward, inverse


def _transform(grid: np.ndarray, matrix: np.ndarray, axes: Tuple[int, ...], q: int) -> np.ndarray:
    for axis in axes:
        grid = np.moveaxis(np.tensordot(matrix, grid, axes=([1], [axis])), 0, axis) % q
    return grid


def ntt_fits(p: int, dim: int, ell: int) -> bool:
    bound = (p ** dim) * ell * (p - 1) ** 2
    q = ntt_prime(p, bound)
    return p * q * q < _INT64_LIMIT


def ntt_convolve(a: np.ndarray, b: np.ndarray, p: int, dim: int, ring: QuotientRing) -> np.ndarray:
    """Transform-domain product; falls back to the naive engine when int64 would overflow"""
    ell = ring.ell
    if not ntt_fits(p, dim, ell):
        logger.warning(f"transform modulus for p={p}, d={dim}, l={ell} overflows int64; using naive engine")
        return naive_convolve(a, b, p, dim, ring)
    q = ntt_prime(p, (p ** dim) * ell * (p - 1) ** 2)
    forward, inverse = _dft_matrices(p, q)
    group = _group_shape(p, dim)

    def to_grid(t):
        return t.reshape(t.shape[:-2] + group + (ell,))

    a_grid, b_grid = to_grid(a), to_grid(b)
    a_axes = tuple(range(a_grid.ndim - dim - 1, a_grid.ndim - 1))
    b_axes = tuple(range(b_grid.ndim - dim - 1, b_grid.ndim - 1))
    a_hat = _transform(a_grid, forward, a_axes, q)
    b_hat = _transform(b_grid, forward, b_axes, q)

    batch = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    wide = np.zeros(batch + group + (2 * ell - 1,), dtype=np.int64)
    for i in range(ell):
        for j in range(ell):
            wide[..., i + j] = (wide[..., i + j] + a_hat[..., i] * b_hat[..., j]) % q
    out_axes = tuple(range(wide.ndim - dim - 1, wide.ndim - 1))
    exact = _transform(wide, inverse, out_axes, q)
    reduced = ring.reduce(exact % p)
    return reduced.reshape(batch + (p ** dim, ell))


def convolve(a: np.ndarray, b: np.ndarray, p: int, dim: int, ring: QuotientRing,
             engine: str = "auto") -> np.ndarray:
    """
    Multiply two group-algebra tables.

    Args:
        a, b: Tables of shape (*batch, p^dim, l) with entries in [0, p)
        engine: "naive", "ntt" or "auto" (naive for small groups or a sparse operand)

    Returns:
        The product table, batch axes broadcast
    """
    if engine not in ENGINES:
        raise UsageError(f"unknown convolution engine {engine!r}; expected one of {ENGINES}")
    _check_table(a, p, dim, ring)
    _check_table(b, p, dim, ring)
    if engine == "auto":
        size_a, size_b = support_size(a), support_size(b)
        if size_b < size_a:
            a, b, size_a = b, a, size_b
        if p ** dim <= settings.NAIVE_CONVOLUTION_LIMIT or size_a <= 2 * dim * p:
            engine = "naive"
        else:
            engine = "ntt"
    if engine == "naive":
        return naive_convolve(a, b, p, dim, ring)
    return ntt_convolve(a, b, p, dim, ring)
