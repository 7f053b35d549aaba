"""Dense GF(2) linear algebra on numpy uint8 arrays.

Matrices are 2-D arrays with entries in {0, 1}, stored row-major
(C order).  Row operations are XORs of whole rows; matrix products
reduce mod 2 at the end (uint8 accumulation wraps mod 256, which
preserves parity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CodeConstructionError


def as_bit_matrix(m) -> np.ndarray:
    """Validate and convert *m* to a 2-D uint8 array with entries in {0, 1}."""
    a = np.asarray(m, dtype=np.uint8)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.size and a.max() > 1:
        raise ValueError("matrix entries must be 0 or 1")
    return a


def as_bit_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.uint8)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={a.ndim}")
    if a.size and a.max() > 1:
        raise ValueError("vector entries must be 0 or 1")
    return a


def gf2_matvec(m, v) -> np.ndarray:
    """Product m @ v over GF(2).

    Args:
        m: binary matrix, shape (rows, cols).
        v: binary vector of length cols.

    Returns:
        Binary vector of length rows; entry i is the XOR of m[i, j] & v[j].
    """
    m = as_bit_matrix(m)
    v = as_bit_vector(v)
    if v.shape[0] != m.shape[1]:
        raise ValueError(f"dimension mismatch: matrix has {m.shape[1]} columns, vector has length {v.shape[0]}")
    # uint8 matmul wraps mod 256; parity survives because 256 is even.
    return (m @ v) & 1


def gf2_matmul(a, b) -> np.ndarray:
    """Product a @ b over GF(2)."""
    a = as_bit_matrix(a)
    b = as_bit_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return (a.astype(np.int64) @ b.astype(np.int64)) & 1


def gf2_rank(m) -> int:
    """Rank of a binary matrix over GF(2)."""
    a = as_bit_matrix(m).copy()
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        hits = np.nonzero(a[rank:, col])[0]
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        elim = a[:, col] == 1
        elim[rank] = False
        if elim.any():
            a[elim] ^= a[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class SystematicForm:
    """Result of a column-prioritized reduction of a parity-check matrix.

    ``h_prime`` keeps the original column order (the permutation is applied
    lazily by consumers); ``h_prime[:, permutation]`` equals [A | I], with
    the identity occupying the last ``len(pivot_columns)`` positions.

    Attributes:
        h_prime: row-reduced matrix, same shape as the input, original
            column order.
        permutation: length-n index array; position j of the permuted
            matrix/vector is original column permutation[j].  The first
            n - r entries are the non-pivot columns in reverse priority
            order, the last r entries are the pivot columns in the order
            they were selected.
        pivot_columns: the r original column indices carrying the identity.
    """

    h_prime: np.ndarray
    permutation: np.ndarray
    pivot_columns: np.ndarray

    def permuted(self) -> np.ndarray:
        """The reduced matrix with the permutation applied: [A | I]."""
        return self.h_prime[:, self.permutation]


def reduce_to_systematic(h, column_priority) -> SystematicForm:
    """Row-reduce *h* so a greedily chosen set of priority columns is the identity.

    Scans ``column_priority`` (most preferred pivot first) and selects the
    first ``rows`` linearly independent columns as pivots.  Rows are fully
    reduced so pivot column i equals unit vector e_i.  Columns are never
    moved; the returned permutation places the non-pivot columns first
    (reverse priority order) and the pivot columns last.

    Args:
        h: binary matrix of full row rank, shape (rows, n).
        column_priority: permutation of range(n), preferred pivots first.

    Raises:
        CodeConstructionError: fewer than ``rows`` independent columns exist.
        ValueError: column_priority is not a permutation of range(n).
    """
    a = as_bit_matrix(h).copy()
    rows, n = a.shape
    priority = np.asarray(column_priority, dtype=np.intp)
    if priority.shape != (n,) or not np.array_equal(np.sort(priority), np.arange(n)):
        raise ValueError("column_priority must be a permutation of range(n)")

    pivot_cols: list[int] = []
    for col in priority:
        if len(pivot_cols) == rows:
            break
        r = len(pivot_cols)
        hits = np.nonzero(a[r:, col])[0]
        if hits.size == 0:
            # dependent on the pivots chosen so far
            continue
        piv = r + hits[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        elim = a[:, col] == 1
        elim[r] = False
        if elim.any():
            a[elim] ^= a[r]
        pivot_cols.append(int(col))

    if len(pivot_cols) < rows:
        raise CodeConstructionError(
            f"rank deficiency: found {len(pivot_cols)} independent columns, need {rows}"
        )

    pivot_set = set(pivot_cols)
    non_pivots = [int(c) for c in priority[::-1] if int(c) not in pivot_set]
    perm = np.array(non_pivots + pivot_cols, dtype=np.intp)
    return SystematicForm(h_prime=a, permutation=perm, pivot_columns=np.array(pivot_cols, dtype=np.intp))


def invert_permutation(perm) -> np.ndarray:
    """Index array q with x[perm][q] == x."""
    perm = np.asarray(perm, dtype=np.intp)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.shape[0], dtype=np.intp)
    return inv
