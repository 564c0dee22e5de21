# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: elimination modulo p and quadric evaluation.

Mirrors ``_kernels_py`` call for call.  Residues must lie in [0, p) and
p must be a prime below 2**31, so every product fits in int64.
"""

import numpy as np
from libc.stdint cimport int64_t


cdef inline int64_t _mod(int64_t x, int64_t p) nogil:
    x = x % p
    return x + p if x < 0 else x


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    return _mod(t, p)


cdef Py_ssize_t _rref(int64_t[:, ::1] m, int64_t p, Py_ssize_t[::1] piv_out) nogil:
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, piv
    cdef int64_t inv, f, tmp
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if m[k, c] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inv(m[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                m[r, j] = m[r, j] * inv % p
        for k in range(nrows):
            if k != r:
                f = m[k, c]
                if f != 0:
                    for j in range(c, ncols):
                        m[k, j] = _mod(m[k, j] - f * m[r, j], p)
        piv_out[r] = c
        r += 1
    return r


def rref_modp(a, int64_t p):
    out = np.array(a, dtype=np.int64, order="C", copy=True)
    if out.ndim != 2 or out.shape[0] == 0 or out.shape[1] == 0:
        return out, []
    cdef int64_t[:, ::1] m = out
    piv = np.zeros(min(out.shape[0], out.shape[1]), dtype=np.intp)
    cdef Py_ssize_t[::1] pv = piv
    cdef Py_ssize_t r
    with nogil:
        r = _rref(m, p, pv)
    return out, [int(x) for x in piv[:r]]


cdef Py_ssize_t _rank(int64_t[:, ::1] m, int64_t p) nogil:
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, piv
    cdef int64_t inv, f, tmp
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if m[k, c] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inv(m[r, c], p)
        for k in range(r + 1, nrows):
            f = m[k, c] * inv % p
            if f != 0:
                for j in range(c, ncols):
                    m[k, j] = _mod(m[k, j] - f * m[r, j], p)
        r += 1
    return r


def rank_modp(a, int64_t p):
    arr = np.array(a, dtype=np.int64, order="C", copy=True)
    if arr.size == 0:
        return 0
    cdef int64_t[:, ::1] m = arr
    cdef Py_ssize_t r
    with nogil:
        r = _rank(m, p)
    return int(r)


cdef int64_t _det(int64_t[:, ::1] m, int64_t p) nogil:
    cdef Py_ssize_t n = m.shape[0], c, k, j, piv
    cdef int64_t det = 1, inv, f, tmp
    for c in range(n):
        piv = -1
        for k in range(c, n):
            if m[k, c] != 0:
                piv = k
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(c, n):
                tmp = m[c, j]
                m[c, j] = m[piv, j]
                m[piv, j] = tmp
            det = p - det if det != 0 else 0
        det = det * m[c, c] % p
        inv = _inv(m[c, c], p)
        for k in range(c + 1, n):
            f = m[k, c] * inv % p
            if f != 0:
                for j in range(c, n):
                    m[k, j] = _mod(m[k, j] - f * m[c, j], p)
    return det % p


def det_modp(a, int64_t p):
    arr = np.array(a, dtype=np.int64, order="C", copy=True)
    if arr.shape[0] == 0:
        return 1 % p
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    cdef int64_t[:, ::1] m = arr
    cdef int64_t d
    with nogil:
        d = _det(m, p)
    return int(d)


def minors_modp(a, cols, int64_t p):
    cdef int64_t[:, ::1] src = np.ascontiguousarray(a, dtype=np.int64)
    cdef int64_t[:, ::1] sel = np.ascontiguousarray(cols, dtype=np.int64).reshape(len(cols), -1)
    cdef Py_ssize_t d = src.shape[0], nsub = sel.shape[0], t, r, c
    out = np.zeros(nsub, dtype=np.int64)
    cdef int64_t[::1] res = out
    if d == 0:
        out[:] = 1 % p
        return out
    buf = np.zeros((d, d), dtype=np.int64)
    cdef int64_t[:, ::1] b = buf
    with nogil:
        for t in range(nsub):
            for r in range(d):
                for c in range(d):
                    b[r, c] = src[r, sel[t, c]]
            res[t] = _det(b, p)
    return out


def eval_quadrics(coef, left, right, offsets, values, int64_t p):
    cdef int64_t[::1] cf = np.ascontiguousarray(coef, dtype=np.int64)
    cdef int64_t[::1] lf = np.ascontiguousarray(left, dtype=np.int64)
    cdef int64_t[::1] rt = np.ascontiguousarray(right, dtype=np.int64)
    cdef int64_t[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef int64_t[::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t nrel = off.shape[0] - 1, r, t
    cdef int64_t s, prod
    out = np.zeros(max(nrel, 0), dtype=np.int64)
    cdef int64_t[::1] res = out
    with nogil:
        for r in range(nrel):
            s = 0
            for t in range(off[r], off[r + 1]):
                if p:
                    prod = v[lf[t]] * v[rt[t]] % p
                    s = _mod(s + cf[t] * prod, p)
                else:
                    s = s + cf[t] * v[lf[t]] * v[rt[t]]
            res[r] = s
    return out
