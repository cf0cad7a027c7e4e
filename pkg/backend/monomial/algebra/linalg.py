"""Row reduction over Z_p"""

import numpy as np


def row_reduce_mod_p(matrix: np.ndarray, p: int) -> np.ndarray:
    """
    Reduced row echelon form over Z_p with zero rows removed.

    The returned rows span the same space as the input rows and are linearly
    independent; pivots are the first nonzero column of each row, scaled to 1
    by their inverse mod p.
    """
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2 or m.size == 0:
        return m.reshape(0, m.shape[-1] if m.ndim == 2 else 0)
    rows, cols = m.shape
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        candidates = np.nonzero(m[pivot_row:, col])[0]
        if candidates.size == 0:
            continue
        r = pivot_row + int(candidates[0])
        if r != pivot_row:
            m[[pivot_row, r]] = m[[r, pivot_row]]
        inv = pow(int(m[pivot_row, col]), -1, p)
        m[pivot_row] = (m[pivot_row] * inv) % p
        factors = m[:, col].copy()
        factors[pivot_row] = 0
        nz = np.nonzero(factors)[0]
        if nz.size:
            m[nz] = (m[nz] - factors[nz, None] * m[pivot_row]) % p
        pivot_row += 1
    return m[:pivot_row]


def matrix_rank_mod_p(matrix: np.ndarray, p: int) -> int:
    return int(row_reduce_mod_p(matrix, p).shape[0])
