# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: in-place RREF and a blocked integer matmul.

Same contracts as _modp_py; see there for the exactness argument.  The RREF
here is the hot path: a single compiled pass avoids the per-pivot temporary
arrays the numpy version allocates.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "cython"


cdef inline long long _inv_mod(long long a, long long p):
    cdef long long r = 1
    cdef long long b = a % p
    cdef long long e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def rref(a, long long p):
    """Reduced row echelon form over F_p; returns (basis, pivots)."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] m = np.array(a, dtype=np.int64, order="C")
    cdef long long[:, ::1] v = m
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long x, inv, fac
    for i in range(rows):
        for j in range(cols):
            x = v[i, j] % p
            if x < 0:
                x += p
            v[i, j] = x
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if v[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                x = v[r, j]
                v[r, j] = v[piv, j]
                v[piv, j] = x
        inv = _inv_mod(v[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                v[r, j] = v[r, j] * inv % p
        for i in range(rows):
            if i == r:
                continue
            fac = v[i, c]
            if fac != 0:
                for j in range(c, cols):
                    x = (v[i, j] - fac * v[r, j]) % p
                    if x < 0:
                        x += p
                    v[i, j] = x
        pivots.append(c)
        r += 1
    return m[:r].copy(), np.asarray(pivots, dtype=np.int64)


def matmul(a, b, long long p):
    """Exact (a @ b) % p with delayed reduction; benchmark counterpart of BLAS."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t kk = A.shape[1]
    cdef Py_ssize_t m = B.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] C = np.zeros((n, m), dtype=np.int64)
    cdef long long[:, ::1] Av = A
    cdef long long[:, ::1] Bv = B
    cdef long long[:, ::1] Cv = C
    # terms we may accumulate before a row reduction is forced
    cdef long long cap = (<long long> 1 << 62) // ((p - 1) * (p - 1) + 1)
    cdef Py_ssize_t i, k, j
    cdef long long aik, cnt
    for i in range(n):
        cnt = 0
        for k in range(kk):
            aik = Av[i, k]
            if aik == 0:
                continue
            for j in range(m):
                Cv[i, j] += aik * Bv[k, j]
            cnt += 1
            if cnt >= cap:
                for j in range(m):
                    Cv[i, j] %= p
                cnt = 0
        for j in range(m):
            Cv[i, j] %= p
    return C
