"""Pure-Python hot kernels: elimination modulo p and quadric evaluation.

Same signatures as the compiled ``_kernels`` extension.  Inputs are 2-D
``int64`` arrays (anything ``numpy.asarray`` accepts); residues are assumed
to lie in ``[0, p)`` with ``p`` a prime below ``2**31``.
"""

import numpy as np


def _rows(a):
    return np.asarray(a, dtype=np.int64).tolist()


def _rref_rows(m, ncols, p):
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if m[k][c]:
                piv = k
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for k in range(nrows):
            if k != r:
                other = m[k]
                f = other[c]
                if f:
                    for j in range(c, ncols):
                        other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_modp(a, p):
    """Reduced row echelon form modulo ``p``; returns ``(matrix, pivot_columns)``."""
    arr = np.asarray(a, dtype=np.int64)
    m = arr.tolist()
    ncols = arr.shape[1] if arr.ndim == 2 else 0
    pivots = _rref_rows(m, ncols, p)
    out = np.array(m, dtype=np.int64).reshape(arr.shape)
    return out, pivots


def rank_modp(a, p):
    arr = np.asarray(a, dtype=np.int64)
    if arr.size == 0:
        return 0
    m = arr.tolist()
    nrows, ncols = arr.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for k in range(rank, nrows):
            if m[k][c]:
                piv = k
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        row = m[rank]
        inv = pow(row[c], -1, p)
        for k in range(rank + 1, nrows):
            other = m[k]
            f = other[c] * inv % p
            if f:
                for j in range(c, ncols):
                    other[j] = (other[j] - f * row[j]) % p
        rank += 1
    return rank


def _det_rows(m, n, p):
    det = 1
    for c in range(n):
        piv = -1
        for k in range(c, n):
            if m[k][c]:
                piv = k
                break
        if piv < 0:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        row = m[c]
        det = det * row[c] % p
        inv = pow(row[c], -1, p)
        for k in range(c + 1, n):
            other = m[k]
            f = other[c] * inv % p
            if f:
                for j in range(c, n):
                    other[j] = (other[j] - f * row[j]) % p
    return det % p


def det_modp(a, p):
    arr = np.asarray(a, dtype=np.int64)
    n = arr.shape[0]
    if n == 0:
        return 1 % p
    if arr.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    return _det_rows(arr.tolist(), n, p)


def minors_modp(a, cols, p):
    """Maximal minors of the ``d x n`` matrix ``a`` on each row of ``cols``."""
    m = _rows(a)
    d = len(m)
    subsets = _rows(cols)
    out = np.zeros(len(subsets), dtype=np.int64)
    for t, subset in enumerate(subsets):
        sub = [[row[c] for c in subset] for row in m]
        out[t] = _det_rows(sub, d, p) if d else 1 % p
    return out


def eval_quadrics(coef, left, right, offsets, values, p):
    """Evaluate quadrics ``sum coef[t] * values[left[t]] * values[right[t]]``.

    Relation ``r`` owns the terms ``offsets[r]:offsets[r + 1]``.  With
    ``p == 0`` the arithmetic is plain int64 and the caller guarantees that
    nothing overflows; otherwise everything is reduced modulo ``p``.
    """
    coef = np.asarray(coef, dtype=np.int64).tolist()
    left = np.asarray(left, dtype=np.int64).tolist()
    right = np.asarray(right, dtype=np.int64).tolist()
    offsets = np.asarray(offsets, dtype=np.int64).tolist()
    vals = np.asarray(values, dtype=np.int64).tolist()
    nrel = len(offsets) - 1
    out = np.zeros(nrel, dtype=np.int64)
    for r in range(nrel):
        s = 0
        for t in range(offsets[r], offsets[r + 1]):
            s += coef[t] * vals[left[t]] * vals[right[t]]
        out[r] = s % p if p else s
    return out
