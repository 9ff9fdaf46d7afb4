"""Exact dense linear algebra over prime fields and over the rationals.

Scalars are plain Python objects: ints reduced mod p for the F_p domain,
`fractions.Fraction` (or int) for the rational domain.  A `Matrix` is a dense
grid over exactly one domain; `Subspace` is a row space held in canonical
reduced row echelon form, so two subspaces are equal iff their stored bases
are equal entry for entry.

Everything here is deterministic: pivoting always takes the leftmost nonzero
column with the topmost available row, and no floating point is used except
the exactness-guarded BLAS path inside the kernels.
"""

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, DomainMismatch
from .kernels import matmul_modp, reduce_rows_modp, rref_modp

__all__ = [
    "Matrix",
    "Subspace",
    "ModpEchelon",
    "rref",
    "rank",
    "nullspace",
    "hermite_normal_form",
]


# ---------------------------------------------------------------------------
# rational (and integer) row reduction with exact Fractions


def _q_rref(rows):
    """RREF over Q. rows: list of lists of Fraction/int. Returns (rows, pivots)."""
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return [], []
    cols = len(rows[0])
    for row in rows:
        if len(row) != cols:
            raise DimensionMismatch("ragged rows")
    r = 0
    pivots = []
    for c in range(cols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _q_reduce(vec, basis, pivots):
    """Canonical representative of vec modulo the row space of an RREF basis."""
    vec = [Fraction(x) for x in vec]
    for row, c in zip(basis, pivots):
        f = vec[c]
        if f != 0:
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec


def _hnf_rows(rows):
    """Row-style Hermite normal form of an integer matrix (exact Python ints).

    Pivots are positive, pivot columns strictly increase, and entries above a
    pivot are reduced into [0, pivot).  Zero rows are dropped.  The result is
    the canonical basis of the row lattice.
    """
    rows = [[int(x) for x in row] for row in rows]
    if not rows:
        return []
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        if r == len(rows):
            break
        # Euclidean elimination below row r in column c
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r] if any(row)]


# ---------------------------------------------------------------------------


class Matrix:
    """Dense exact matrix over F_p (p prime) or over Q (p=None)."""

    __slots__ = ("p", "_a", "_q")

    def __init__(self, entries, p=None):
        self.p = p
        if p is not None:
            try:
                a = np.array(entries, dtype=np.int64)
            except ValueError as exc:
                raise DimensionMismatch("ragged rows") from exc
            if a.ndim == 1:
                a = a.reshape(1, -1)
            if a.ndim != 2:
                raise DimensionMismatch("expected a 2-D grid")
            self._a = a % p
            self._q = None
        else:
            rows = [list(row) for row in entries]
            for row in rows:
                for x in row:
                    if not isinstance(x, (int, Fraction)):
                        raise DomainMismatch(f"not an exact rational scalar: {x!r}")
            widths = {len(row) for row in rows}
            if len(widths) > 1:
                raise DimensionMismatch("ragged rows")
            self._a = None
            self._q = [[Fraction(x) for x in row] for row in rows]

    # -- construction helpers

    @classmethod
    def from_array(cls, a, p):
        m = cls.__new__(cls)
        m.p = p
        m._a = np.array(a, dtype=np.int64) % p
        m._q = None
        return m

    # -- basic introspection

    @property
    def shape(self):
        if self.p is not None:
            return tuple(self._a.shape)
        return (len(self._q), len(self._q[0]) if self._q else 0)

    def to_lists(self):
        if self.p is not None:
            return [[int(x) for x in row] for row in self._a]
        return [list(row) for row in self._q]

    def array(self):
        """int64 array view (F_p domain only)."""
        if self.p is None:
            raise DomainMismatch("no array form for rational matrices")
        return self._a

    def is_integral(self):
        if self.p is not None:
            return True
        return all(Fraction(x).denominator == 1 for row in self._q for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.p != other.p:
            return False
        if self.p is not None:
            return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))
        return self._q == other._q

    __hash__ = None

    def __repr__(self):
        dom = f"F_{self.p}" if self.p is not None else "Q"
        return f"Matrix({self.shape[0]}x{self.shape[1]} over {dom})"


def _same_domain(a, b):
    if a.p != b.p:
        raise DomainMismatch(f"mixed domains: {a!r} vs {b!r}")


def rref(matrix):
    """Canonical reduced row echelon form (zero rows dropped)."""
    if matrix.p is not None:
        basis, _ = rref_modp(matrix.array(), matrix.p)
        return Matrix.from_array(basis, matrix.p)
    basis, _ = _q_rref(matrix.to_lists())
    return Matrix(basis, p=None)


def rank(matrix):
    if matrix.p is not None:
        return int(rref_modp(matrix.array(), matrix.p)[0].shape[0])
    return len(_q_rref(matrix.to_lists())[0])


def nullspace(matrix):
    """Right kernel {v : M v^T = 0}, as a canonical Subspace.

    Rank-nullity (rank + dim kernel == columns) is asserted on every call.
    """
    rows, cols = matrix.shape
    if matrix.p is not None:
        p = matrix.p
        basis, pivots = rref_modp(matrix.array(), p)
        r = basis.shape[0]
        free = [c for c in range(cols) if c not in set(int(x) for x in pivots)]
        vecs = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            vecs[k, f] = 1
            if r:
                vecs[k, np.asarray(pivots, dtype=np.int64)] = (-basis[:, f]) % p
        ker = Subspace.from_vectors(vecs, cols, p=p)
        assert r + ker.dim == cols, "rank-nullity violated"
        return ker
    basis, pivots = _q_rref(matrix.to_lists())
    free = [c for c in range(cols) if c not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, c in zip(basis, pivots):
            v[c] = -row[f]
        vecs.append(v)
    ker = Subspace.from_vectors(vecs, cols, p=None)
    assert len(basis) + ker.dim == cols, "rank-nullity violated"
    return ker


def hermite_normal_form(matrix):
    """Canonical row-lattice basis of an integer matrix."""
    if matrix.p is not None:
        raise DomainMismatch("Hermite normal form needs integer (rational-domain) entries")
    if not matrix.is_integral():
        raise DomainMismatch("Hermite normal form needs integer entries")
    return Matrix(_hnf_rows(matrix.to_lists()), p=None)


# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of k^ambient stored by its unique RREF basis."""

    __slots__ = ("ambient", "p", "_basis", "_pivots", "_qbasis", "_qpivots")

    def __init__(self, ambient, p, basis, pivots):
        self.ambient = int(ambient)
        self.p = p
        if p is not None:
            self._basis = np.asarray(basis, dtype=np.int64).reshape(-1, self.ambient)
            self._pivots = np.asarray(pivots, dtype=np.int64)
            self._qbasis = self._qpivots = None
        else:
            self._qbasis = [[Fraction(x) for x in row] for row in basis]
            self._qpivots = list(pivots)
            self._basis = self._pivots = None

    @classmethod
    def from_vectors(cls, vectors, ambient, p=None):
        if p is not None:
            arr = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient)
            basis, pivots = rref_modp(arr, p)
            return cls(ambient, p, basis, pivots)
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != ambient:
                raise DimensionMismatch("vector length != ambient")
        basis, pivots = _q_rref(rows)
        return cls(ambient, None, basis, pivots)

    @classmethod
    def zero(cls, ambient, p=None):
        return cls.from_vectors(np.zeros((0, ambient), dtype=np.int64) if p else [], ambient, p)

    @classmethod
    def full(cls, ambient, p=None):
        if p is not None:
            return cls(ambient, p, np.eye(ambient, dtype=np.int64), np.arange(ambient))
        eye = [[Fraction(int(i == j)) for j in range(ambient)] for i in range(ambient)]
        return cls(ambient, None, eye, list(range(ambient)))

    # -- introspection

    @property
    def dim(self):
        return len(self._qbasis) if self.p is None else int(self._basis.shape[0])

    @property
    def basis(self):
        """Canonical basis rows (int64 array over F_p, list of Fraction rows over Q)."""
        return self._basis if self.p is not None else [list(r) for r in self._qbasis]

    @property
    def pivots(self):
        return self._pivots if self.p is not None else list(self._qpivots)

    def _check(self, other):
        if not isinstance(other, Subspace):
            raise TypeError("expected a Subspace")
        if self.p != other.p:
            raise DomainMismatch("subspaces over different domains")
        if self.ambient != other.ambient:
            raise DimensionMismatch("subspaces of different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.p != other.p or self.ambient != other.ambient:
            return False
        if self.p is not None:
            return self._basis.shape == other._basis.shape and bool(
                np.array_equal(self._basis, other._basis)
            )
        return self._qbasis == other._qbasis

    def __repr__(self):
        dom = f"F_{self.p}" if self.p is not None else "Q"
        return f"Subspace(dim {self.dim} of {dom}^{self.ambient})"

    # -- membership and canonical forms

    def reduce(self, vector):
        """Canonical representative of vector modulo this subspace."""
        if self.p is not None:
            v = np.asarray(vector, dtype=np.int64).reshape(1, -1) % self.p
            if v.shape[1] != self.ambient:
                raise DimensionMismatch("vector length != ambient")
            if self.dim == 0:
                return v[0]
            return reduce_rows_modp(v, self._basis, self._pivots, self.p)[0]
        if len(vector) != self.ambient:
            raise DimensionMismatch("vector length != ambient")
        return _q_reduce(vector, self._qbasis, self._qpivots)

    def contains(self, vector):
        red = self.reduce(vector)
        if self.p is not None:
            return not red.any()
        return all(x == 0 for x in red)

    def contains_space(self, other):
        self._check(other)
        if other.dim == 0:
            return True
        if self.dim == 0:
            return False
        if self.p is not None:
            return not reduce_rows_modp(other._basis, self._basis, self._pivots, self.p).any()
        return all(self.contains(row) for row in other._qbasis)

    # -- lattice of subspaces

    def plus(self, other):
        """Subspace sum."""
        self._check(other)
        if self.p is not None:
            stacked = np.vstack([self._basis, other._basis])
            return Subspace.from_vectors(stacked, self.ambient, self.p)
        return Subspace.from_vectors(self._qbasis + other._qbasis, self.ambient, None)

    def intersect(self, other):
        """Subspace intersection (Zassenhaus block trick)."""
        self._check(other)
        n = self.ambient
        if self.p is not None:
            p = self.p
            a, b = self._basis, other._basis
            if a.shape[0] == 0 or b.shape[0] == 0:
                return Subspace.zero(n, p)
            block = np.zeros((a.shape[0] + b.shape[0], 2 * n), dtype=np.int64)
            block[: a.shape[0], :n] = a
            block[: a.shape[0], n:] = a
            block[a.shape[0] :, :n] = b
            basis, _ = rref_modp(block, p)
            left_zero = ~basis[:, :n].any(axis=1)
            return Subspace.from_vectors(basis[left_zero, n:], n, p)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n, None)
        block = [row + row for row in self._qbasis]
        block += [row + [Fraction(0)] * n for row in other._qbasis]
        basis, _ = _q_rref(block)
        inter = [row[n:] for row in basis if all(x == 0 for x in row[:n])]
        return Subspace.from_vectors(inter, n, None)

    def to_matrix(self):
        if self.p is not None:
            return Matrix.from_array(self._basis, self.p)
        return Matrix(self._qbasis if self._qbasis else [], p=None)


# ---------------------------------------------------------------------------


class ModpEchelon:
    """Incremental RREF accumulator over F_p.

    Feed batches of rows with add(); the object maintains the canonical RREF
    basis of everything seen so far.  This is what the big constraint solves
    are built on, so batches never need to be materialized jointly.
    """

    def __init__(self, ambient, p):
        self.ambient = int(ambient)
        self.p = int(p)
        self.basis = np.zeros((0, ambient), dtype=np.int64)
        self.pivots = np.zeros(0, dtype=np.int64)

    @property
    def dim(self):
        return int(self.basis.shape[0])

    def reduce(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ambient) % self.p
        if self.dim == 0 or rows.shape[0] == 0:
            return rows
        return reduce_rows_modp(rows, self.basis, self.pivots, self.p)

    def add(self, rows):
        """Absorb rows; returns the number of new pivots."""
        red = self.reduce(rows)
        if red.shape[0] == 0 or not red.any():
            return 0
        newb, newp = rref_modp(red, self.p)
        if newb.shape[0] == 0:
            return 0
        if self.dim:
            # clear the new pivot columns from the old basis rows; the new rows
            # already have zeros on the old pivot columns
            self.basis = (self.basis - matmul_modp(self.basis[:, newp], newb, self.p)) % self.p
        merged = np.vstack([self.basis, newb])
        order = np.argsort(np.concatenate([self.pivots, newp]), kind="stable")
        allp = np.concatenate([self.pivots, newp])
        self.basis = merged[order]
        self.pivots = allp[order]
        return int(newb.shape[0])

    def to_subspace(self):
        return Subspace(self.ambient, self.p, self.basis.copy(), self.pivots.copy())
