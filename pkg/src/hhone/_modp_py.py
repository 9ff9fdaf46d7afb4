"""Mod-p array kernels, numpy implementation.

All kernels take int64 arrays with entries already reduced into [0, p).
The float64 matmul path is exact: products are at most (p-1)^2 and partial
sums stay integers below 2**53 (checked), so BLAS accumulates them without
rounding.  The int64 path is exact for any p <= 2**15 because
(p-1)^2 * inner < 2**63 for every inner dimension we can address.
"""

import numpy as np

NAME = "numpy"

_F64_BOUND = 2**53


def _as2d(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    return a


def matmul(a, b, p):
    """Exact (a @ b) % p for reduced int64 inputs."""
    a = _as2d(a)
    b = _as2d(b)
    inner = a.shape[1]
    if (p - 1) * (p - 1) * max(inner, 1) < _F64_BOUND:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(c).astype(np.int64) % p
    return (a @ b) % p


def reduce_rows(v, basis, pivots, p):
    """Reduce the rows of v against an RREF basis with the given pivot columns.

    Returns v - v[:, pivots] @ basis (mod p); the result has zeros in every
    pivot column, i.e. it is the canonical representative of each row modulo
    the row space of basis.
    """
    v = _as2d(v) % p
    if len(pivots) == 0:
        return v
    return (v - matmul(v[:, pivots], basis, p)) % p


def rref(a, p):
    """Reduced row echelon form over F_p.

    Deterministic: pivots are the leftmost nonzero columns, taken top-down.
    Returns (basis, pivots) with zero rows dropped; basis rows have a leading
    1 in strictly increasing pivot columns, and every pivot column is zero
    elsewhere.
    """
    a = np.array(a, dtype=np.int64, order="C")
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    a %= p
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        fac = a[:, c].copy()
        fac[r] = 0
        hit = np.nonzero(fac)[0]
        if hit.size:
            # fac < p and row entries < p, so products stay far below 2**63
            a[hit, c:] = (a[hit, c:] - fac[hit, None] * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return a[:r].copy(), np.asarray(pivots, dtype=np.int64)
