"""Exact rank of sparse integer matrices over the rationals."""

from math import gcd

import numpy as np
import scipy.sparse as sp

from . import _kernels

__all__ = ["exact_rank", "bigint_rank"]


def _columns(matrix):
    csc = sp.csc_matrix(matrix)
    csc.sum_duplicates()
    csc.sort_indices()
    csc.eliminate_zeros()
    return csc


def exact_rank(matrix) -> int:
    """Rank over Q of an integer sparse matrix.

    The compiled reduction runs in int64 with overflow guards; a block
    whose entries grow too large is redone with Python integers.
    """
    csc = _columns(matrix)
    n_rows, n_cols = csc.shape
    if n_rows == 0 or n_cols == 0 or csc.nnz == 0:
        return 0
    r = _kernels.sparse_rank(
        n_rows,
        csc.indptr.astype(np.int64),
        csc.indices.astype(np.int64),
        csc.data.astype(np.int64),
    )
    if r < 0:
        return bigint_rank(csc)
    return int(r)


def bigint_rank(matrix) -> int:
    """Same reduction as the compiled path, with unbounded integers."""
    csc = _columns(matrix)
    pivots = {}
    rank = 0
    for j in range(csc.shape[1]):
        lo, hi = csc.indptr[j], csc.indptr[j + 1]
        col = {int(r): int(v) for r, v in zip(csc.indices[lo:hi], csc.data[lo:hi])}
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            fa, fb = other[low], col[low]
            g = gcd(fa, fb)
            fa //= g
            fb //= g
            new = {r: fa * v for r, v in col.items()}
            for r, v in other.items():
                w = new.get(r, 0) - fb * v
                if w:
                    new[r] = w
                else:
                    new.pop(r, None)
            content = 0
            for v in new.values():
                content = gcd(content, v)
            if content > 1:
                new = {r: v // content for r, v in new.items()}
            col = new
    return rank
