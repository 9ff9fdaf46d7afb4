"""Derivation spaces of the supported algebras.

A linear map D is certified as a derivation through its generating set: the
elements a with D(ab) = D(a)b + a*D(b) for every b form a unital subalgebra,
so D(1) = 0 together with the operator identity

    D L_g - L_g D = L_{D(g)}   for each generator g

proves the Leibniz rule on the whole algebra.  This certificate is complete,
not a spot check.

For the truncated q-commutation algebra the space of all derivations is
computed from a linear system on the pair (D(x), D(y)): a derivation is
determined by that pair, the pair must kill the defining relations (x^p,
y^p, yx - q xy), and conversely every admissible pair extends via

    u_{c+1} = u_c x + x^c D(x),   v_{d+1} = v_d y + y^d D(y),
    D(x^c y^d) = u_c y^d + x^c v_d.

The closed-form admissibility conditions are asserted equal to the
relation-derived system before use, every extended basis map is certified,
and the dimension is checked against p^2 + 1 + ((p-1)/e)^2.
"""

import numpy as np

from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    InvalidParameters,
    InvalidSocleMap,
    NoSuchDerivation,
    NotADerivation,
    PairingNotFound,
    ScaleLimitExceeded,
    StructureMismatch,
)
from .kernels import matmul_modp, reduce_rows_modp, rref_modp
from .linalg import Matrix, ModpEchelon, Subspace, nullspace

__all__ = [
    "Derivation",
    "derivation_space",
    "derivations_generic",
    "inner_derivation",
    "inner_derivation_space",
    "qci_claimed_constraints",
    "qci_relation_constraints",
    "qci_pair_kernel",
    "extend_pairs",
    "monomial_derivation",
    "monomial_derivation_exists",
    "qci_inner_monomial",
    "basis_X",
    "socle_valued_map",
    "second_socle_map",
]


def _mono_mult_rows(A, rows, m_idx, side):
    """Multiply every row vector by the basis monomial b_m on the given side.

    Multiplication by a basis element of a monomial algebra sends distinct
    basis vectors to distinct targets (asserted), so this is a pure gather.
    """
    coeff, idx = A._coeff, A._idx
    n = A.n
    if side == "left":
        cf, tg = coeff[m_idx, :], idx[m_idx, :]
    else:
        cf, tg = coeff[:, m_idx], idx[:, m_idx]
    alive = cf % A.p != 0
    live_t = tg[alive]
    assert np.unique(live_t).size == live_t.size, "monomial multiplication collided"
    out = np.zeros_like(rows)
    out[:, live_t] = (rows[:, alive] * cf[alive]) % A.p
    return out


class Derivation:
    """A certified derivation of an FDAlgebra, stored as the n x n matrix of
    its action on coordinates (column j = coordinates of D(b_j))."""

    def __init__(self, algebra, matrix, check=True):
        if algebra.p is None:
            raise InvalidParameters("derivations implemented over F_p only")
        self.algebra = algebra
        m = np.asarray(matrix, dtype=np.int64) % algebra.p
        if m.shape != (algebra.n, algebra.n):
            raise DimensionMismatch("derivation matrix must be n x n")
        self.matrix = m
        if check:
            bad = _leibniz_violation(algebra, m[None, :, :])
            if bad is not None:
                raise NotADerivation(bad)

    def __call__(self, elt):
        from .algebra import AlgebraElement

        if isinstance(elt, AlgebraElement):
            if elt.algebra is not self.algebra:
                raise AlgebraMismatch("element of a different algebra")
            coords = elt.coords
            return AlgebraElement(self.algebra, self.value_on(coords))
        return self.value_on(np.asarray(elt, dtype=np.int64))

    def value_on(self, coords):
        return matmul_modp(self.matrix, coords.reshape(-1, 1) % self.algebra.p, self.algebra.p)[:, 0]

    @property
    def flat(self):
        """Row-major flattening, the coordinate convention for Der subspaces."""
        return self.matrix.ravel()

    def _join(self, other):
        if not isinstance(other, Derivation) or other.algebra is not self.algebra:
            raise AlgebraMismatch("derivations of different algebras")
        return other

    def __add__(self, other):
        other = self._join(other)
        return Derivation(self.algebra, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        other = self._join(other)
        return Derivation(self.algebra, self.matrix - other.matrix, check=False)

    def __rmul__(self, scalar):
        return Derivation(self.algebra, self.matrix * int(scalar), check=False)

    def bracket(self, other):
        """[D1, D2] = D1 D2 - D2 D1, again a derivation."""
        other = self._join(other)
        p = self.algebra.p
        m = matmul_modp(self.matrix, other.matrix, p) - matmul_modp(other.matrix, self.matrix, p)
        return Derivation(self.algebra, m, check=False)

    def p_power(self):
        """The p-th operator power, a derivation in characteristic p."""
        p = self.algebra.p
        out = self.matrix
        for _ in range(p - 1):
            out = matmul_modp(out, self.matrix, p)
        return Derivation(self.algebra, out, check=False)

    def __eq__(self, other):
        if not isinstance(other, Derivation) or other.algebra is not self.algebra:
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def __repr__(self):
        return f"<derivation of {self.algebra.name}>"


def _leibniz_violation(A, mats):
    """None if every matrix in the (m, n, n) stack is a derivation, else a
    message naming the first violation."""
    p, n = A.p, A.n
    m = mats.shape[0]
    ones = np.einsum("mkt,t->mk", mats, A.unit) % p
    if ones.any():
        return "D(1) != 0"
    flat = mats.reshape(m * n, n)
    for gi, gv in enumerate(A.generator_vecs):
        Lg = A.left_mult_matrix(gv)
        d_lg = matmul_modp(flat, Lg, p).reshape(m, n, n)
        lg_d = (
            matmul_modp(mats.transpose(0, 2, 1).reshape(m * n, n), Lg.T, p)
            .reshape(m, n, n)
            .transpose(0, 2, 1)
        )
        dg = np.einsum("mkt,t->mk", mats, gv) % p
        for t in range(m):
            want = A.left_mult_matrix(dg[t])
            if not np.array_equal((d_lg[t] - lg_d[t]) % p, want):
                return f"Leibniz fails against generator {gi} for matrix {t}"
    return None


# ---------------------------------------------------------------------------
# inner derivations


def inner_derivation(A, u):
    """ad(u): a -> ua - au."""
    from .algebra import AlgebraElement

    coords = u.coords if isinstance(u, AlgebraElement) else np.asarray(u, dtype=np.int64)
    return Derivation(A, A.ad_matrix(coords), check=False)


def inner_derivation_space(A):
    """Span of all ad(b_i), flattened row-major; dim = n - dim Z(A)."""
    from .algebra import center

    if getattr(A, "_inner_der", None) is None:
        rows = np.stack([A.ad_matrix(A._unitvec(i)).ravel() for i in range(A.n)])
        S = Subspace.from_vectors(rows, A.n * A.n, p=A.p)
        assert S.dim == A.n - center(A).dim, "inner derivations vs center mismatch"
        A._inner_der = S
    return A._inner_der


# ---------------------------------------------------------------------------
# the q-commutation algebra: derivations from the (D(x), D(y)) pair


def _require_qci(A):
    if A.meta.get("kind") != "qci":
        raise InvalidParameters("this operation targets the q-commutation algebra")


def qci_claimed_constraints(A):
    """Closed-form admissibility rows for the pair (D(x), D(y)).

    Unknown layout: alpha (coordinates of D(x), basis order) then beta
    (coordinates of D(y)), 2n unknowns.  Rows:
      * alpha_{i,j-1} (1 - q^(i-1)) + beta_{i-1,j} (1 - q^(j-1)) = 0
        for 1 <= i, j <= p-1, skipped when e | i-1 and e | j-1 (the row
        would be identically zero);
      * alpha_{0,t} = 0 for 0 <= t <= p-2;
      * beta_{t,0} = 0 for 0 <= t <= p-2.
    """
    _require_qci(A)
    p, e, q = A.meta["p"], A.meta["e"], A.meta["q"]
    n = A.n
    rows = []
    for i in range(1, p):
        for j in range(1, p):
            if (i - 1) % e == 0 and (j - 1) % e == 0:
                continue
            row = np.zeros(2 * n, dtype=np.int64)
            row[i * p + (j - 1)] = (1 - pow(q, i - 1, p)) % p
            row[n + (i - 1) * p + j] = (1 - pow(q, j - 1, p)) % p
            rows.append(row)
    for t in range(p - 1):
        row = np.zeros(2 * n, dtype=np.int64)
        row[0 * p + t] = 1
        rows.append(row)
        row = np.zeros(2 * n, dtype=np.int64)
        row[n + t * p + 0] = 1
        rows.append(row)
    return np.asarray(rows, dtype=np.int64)


def qci_relation_constraints(A):
    """Relation-derived admissibility rows for (D(x), D(y)).

    A derivation kills the defining relations, so the pair (f, g) must
    satisfy sum_s x^s f x^(p-1-s) = 0, sum_s y^s g y^(p-1-s) = 0 and
    y f - q f y + g x - q x g = 0.  Conversely a pair satisfying these
    extends to the quotient of the free algebra, so the system is exact.
    """
    _require_qci(A)
    p = A.meta["p"]
    n = A.n
    q = A.meta["q"]
    x, y = A._unitvec(p), A._unitvec(1)
    mx = np.zeros((n, n), dtype=np.int64)
    my = np.zeros((n, n), dtype=np.int64)
    for s in range(p):
        lx = A.left_mult_matrix(A._unitvec(s * p))        # x^s
        rx = A.right_mult_matrix(A._unitvec((p - 1 - s) * p))
        mx = (mx + matmul_modp(lx, rx, A.p)) % A.p
        ly = A.left_mult_matrix(A._unitvec(s))            # y^s
        ry = A.right_mult_matrix(A._unitvec(p - 1 - s))
        my = (my + matmul_modp(ly, ry, A.p)) % A.p
    comm_f = (A.left_mult_matrix(y) - q * A.right_mult_matrix(y)) % A.p
    comm_g = (A.right_mult_matrix(x) - q * A.left_mult_matrix(x)) % A.p
    top = np.hstack([mx, np.zeros((n, n), dtype=np.int64)])
    mid = np.hstack([np.zeros((n, n), dtype=np.int64), my])
    bot = np.hstack([comm_f, comm_g])
    return np.vstack([top, mid, bot]) % A.p


def qci_pair_kernel(A):
    """Admissible (D(x), D(y)) pairs as a canonical Subspace of k^(2n).

    The closed-form rows and the relation rows are required to have the same
    kernel; this equality is itself one of the verified claims.
    """
    _require_qci(A)
    if getattr(A, "_pair_kernel", None) is None:
        k_claim = nullspace(Matrix.from_array(qci_claimed_constraints(A), A.p))
        k_rel = nullspace(Matrix.from_array(qci_relation_constraints(A), A.p))
        if k_claim != k_rel:
            raise NotADerivation(
                "closed-form admissibility rows disagree with the defining relations"
            )
        A._pair_kernel = k_claim
    return A._pair_kernel


def extend_pairs(A, pairs):
    """Extend (D(x), D(y)) rows (m, 2n) to full derivation matrices (m, n, n)."""
    _require_qci(A)
    p, n = A.meta["p"], A.n
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2 * n) % A.p
    m = pairs.shape[0]
    F, G = pairs[:, :n], pairs[:, n:]
    x_idx, y_idx = p, 1
    U = np.zeros((p, m, n), dtype=np.int64)  # U[c] = D(x^c) rows
    V = np.zeros((p, m, n), dtype=np.int64)
    for c in range(p - 1):
        U[c + 1] = (_mono_mult_rows(A, U[c], x_idx, "right")
                    + _mono_mult_rows(A, F, c * p, "left")) % A.p
        V[c + 1] = (_mono_mult_rows(A, V[c], y_idx, "right")
                    + _mono_mult_rows(A, G, c, "left")) % A.p
    mats = np.zeros((m, n, n), dtype=np.int64)
    for c in range(p):
        for d in range(p):
            col = (_mono_mult_rows(A, U[c], d, "right")
                   + _mono_mult_rows(A, V[d], c * p, "left")) % A.p
            mats[:, :, c * p + d] = col
    return mats


def derivation_space(A):
    """Der(A) as a canonical Subspace of flattened matrices.

    For the q-commutation algebra this solves the admissibility system for
    (D(x), D(y)), extends, certifies every basis matrix, and checks the
    dimension formula p^2 + 1 + ((p-1)/e)^2.  Anything else goes through the
    generic all-pairs Leibniz solver (dimension guard <= 50).
    """
    if getattr(A, "_der_space", None) is not None:
        return A._der_space
    if A.meta.get("kind") == "qci":
        p, e = A.meta["p"], A.meta["e"]
        ker = qci_pair_kernel(A)
        mats = extend_pairs(A, ker.basis) if ker.dim else np.zeros((0, A.n, A.n), dtype=np.int64)
        bad = _leibniz_violation(A, mats) if ker.dim else None
        if bad is not None:
            raise NotADerivation(f"extension of an admissible pair failed: {bad}")
        S = Subspace.from_vectors(mats.reshape(ker.dim, A.n * A.n), A.n * A.n, p=A.p)
        expect = p * p + 1 + ((p - 1) // e) ** 2
        if S.dim != expect:
            raise NotADerivation(
                f"derivation space has dimension {S.dim}, formula says {expect}"
            )
        A._der_space = S
        return S
    A._der_space = derivations_generic(A)
    return A._der_space


def derivations_generic(A, max_dim=50):
    """All-pairs Leibniz nullspace, the independent oracle for Der(A).

    Builds the n^3 x n^2 constraint system D(b_i b_j) = D(b_i) b_j +
    b_i D(b_j) with no use of generators or closed forms.
    """
    if A.p is None:
        raise InvalidParameters("derivations implemented over F_p only")
    n = A.n
    if n > max_dim:
        raise ScaleLimitExceeded(f"generic Leibniz solver limited to dim {max_dim}")
    ech = ModpEchelon(n * n, A.p)
    ar = np.arange(n)
    for i in range(n):
        # row (j, k) constrains unknown D[k', t]; axes below are (j, k, k', t)
        block = np.zeros((n, n, n, n), dtype=np.int64)
        if A._coeff is not None:
            cf, ix = A._coeff, A._idx
            for j in range(n):
                # D(b_i b_j): coeff[i,j] * D[k, idx[i,j]]
                if cf[i, j] % A.p:
                    block[j, ar, ar, ix[i, j]] += cf[i, j]
                # D(b_i) b_j = sum_t D[t,i] coeff[t,j] e_{idx[t,j]}
                live = cf[:, j] % A.p != 0
                block[j, ix[live, j], live, i] -= cf[live, j]
                # b_i D(b_j) = sum_t D[t,j] coeff[i,t] e_{idx[i,t]}
                live = cf[i, :] % A.p != 0
                block[j, ix[i, live], ar[live], j] -= cf[i, live]
        else:
            T = A._tensor
            for j in range(n):
                block[j, ar, ar, :] += T[i, j][None, :]
                block[j, :, :, i] -= T[:, j, :].T
                block[j, :, :, j] -= T[i, :, :].T
        ech.add(block.reshape(n * n, n * n) % A.p)
    return nullspace(Matrix.from_array(ech.basis, A.p))


# ---------------------------------------------------------------------------
# the distinguished monomial derivations


def monomial_derivation_exists(A, kind, a, b):
    """Existence test for f_{a,b} (kind 'f') or g_{a,b} (kind 'g')."""
    _require_qci(A)
    p, e = A.meta["p"], A.meta["e"]
    if not (0 <= a < p and 0 <= b < p):
        return False
    if kind == "f":
        return b == p - 1 or (a >= 1 and (a - 1) % e == 0)
    if kind == "g":
        return a == p - 1 or (b >= 1 and (b - 1) % e == 0)
    raise InvalidParameters("kind must be 'f' or 'g'")


def monomial_derivation(A, kind, a, b):
    """The monomial derivation f_{a,b} or g_{a,b}, certified on construction.

    f_{a,b} sends x^c y^d to (sum_{s<c} q^(b s)) x^(a+c-1) y^(b+d) and kills
    y; g_{a,b} is the mirror image.  Raises NoSuchDerivation when the (a, b)
    admissibility fails.
    """
    _require_qci(A)
    p, q = A.meta["p"], A.meta["q"]
    if not monomial_derivation_exists(A, kind, a, b):
        raise NoSuchDerivation(f"{kind}_({a},{b}) is not a derivation here")
    n = A.n
    cc, dd = np.divmod(np.arange(n), p)
    # geometric sums S[c] = sum_{s<c} q^(w s) for the weight w = b (f) or a (g)
    w = b if kind == "f" else a
    S = np.zeros(p + 1, dtype=np.int64)
    for c in range(p):
        S[c + 1] = (S[c] + pow(q, w * c, p)) % p
    mat = np.zeros((n, n), dtype=np.int64)
    if kind == "f":
        ti, tj = a + cc - 1, b + dd
        val = S[cc]
        mask = (cc >= 1) & (ti >= 0) & (ti < p) & (tj < p)
    else:
        ti, tj = a + cc, b + dd - 1
        val = S[dd]
        mask = (dd >= 1) & (tj >= 0) & (ti < p) & (tj < p)
    src = np.arange(n)[mask]
    mat[(ti[mask] * p + tj[mask]), src] = val[mask] % p
    return Derivation(A, mat, check=True)


def qci_inner_monomial(A, i, j):
    """ad(x^i y^j), the distinguished inner derivation d_{i,j}."""
    _require_qci(A)
    p = A.meta["p"]
    if not (0 <= i < p and 0 <= j < p):
        raise InvalidParameters("monomial exponents out of range")
    return inner_derivation(A, A._unitvec(i * p + j))


def basis_X(A):
    """The distinguished outer-basis family: tuples (kind, a, b, Derivation).

    f_{a,b} for (e | a-1 and e | b) or b = p-1, and g_{a,b} for
    (e | a and e | b-1) or a = p-1; the classes of these maps form a basis
    of Der/IDer of the expected size 2(p + ((p-1)/e)^2).
    """
    _require_qci(A)
    p, e = A.meta["p"], A.meta["e"]
    out = []
    for a in range(p):
        for b in range(p):
            if ((a - 1) % e == 0 and b % e == 0) or b == p - 1:
                out.append(("f", a, b, monomial_derivation(A, "f", a, b)))
    for a in range(p):
        for b in range(p):
            if (a % e == 0 and (b - 1) % e == 0) or a == p - 1:
                out.append(("g", a, b, monomial_derivation(A, "g", a, b)))
    assert len(out) == 2 * (p + ((p - 1) // e) ** 2), "family size off"
    return out


# ---------------------------------------------------------------------------
# socle-valued maps: derivations from assignments that kill 1 + J^2


def _as_coords(A, elt):
    from .algebra import AlgebraElement

    if isinstance(elt, AlgebraElement):
        if elt.algebra is not A:
            raise AlgebraMismatch("element of a different algebra")
        return elt.coords % A.p
    v = np.asarray(elt, dtype=np.int64)
    if v.shape != (A.n,):
        raise DimensionMismatch("coordinate vectors must have length n")
    return v % A.p


def _inverse_modp(mat, p):
    k = mat.shape[0]
    aug = np.hstack([mat % p, np.eye(k, dtype=np.int64)])
    red, piv = rref_modp(aug, p)
    if not np.array_equal(piv, np.arange(k)):
        raise InvalidSocleMap("assignment domain does not span a complement")
    return red[:, k:]


def _vanishing_extension(A, xs, targets):
    """Matrix of the map sending the rows of xs to the rows of targets and
    both the unit and J^2 to zero; the rows of xs must complete {1} + J^2
    to a basis of A."""
    from .algebra import radical_power

    p = A.p
    J2 = radical_power(A, 2)
    B = np.vstack([A.unit[None, :], xs, J2.basis]) % p
    if B.shape[0] != A.n:
        raise InvalidSocleMap(
            f"need {A.n - 1 - J2.dim} assignment vectors, got {xs.shape[0]}"
        )
    inv = _inverse_modp(B, p)
    T = np.zeros((A.n, A.n), dtype=np.int64)
    T[1 : 1 + xs.shape[0]] = targets % p
    return matmul_modp(inv, T, p).T


def _complement_of_square(A):
    """Rows spanning a complement of J^2 in J; for the q-commutation algebra
    this is (x, y) in that order, matching the written convention."""
    from .algebra import radical_power

    p = A.p
    J, J2 = A.radical, radical_power(A, 2)
    if A.meta.get("kind") == "qci":
        rows = np.stack([A._unitvec(A.meta["p"]), A._unitvec(1)])
    else:
        ech = ModpEchelon(A.n, p)
        if J2.dim:
            ech.add(J2.basis)
        keep = []
        for row in J.basis:
            if ech.add(row[None, :]):
                keep.append(row)
        rows = (
            np.stack(keep) if keep else np.zeros((0, A.n), dtype=np.int64)
        )
    red = reduce_rows_modp(rows, J2.basis, J2.pivots, p) if J2.dim else rows
    assert Subspace.from_vectors(red, A.n, p=p).dim == J.dim - J2.dim
    return rows


def socle_valued_map(A, values):
    """Extend an assignment on a complement of k + J^2 in J to a derivation.

    `values` lists (element, image) pairs: the elements must form a basis of
    a complement of J^2 in J, the images must lie in soc(A).  The extension
    by zero on 1 and J^2 is certified as a derivation, and a nonzero map is
    verified to be outer (its matrix is checked against the inner subspace;
    an inner hit would put a nonzero ideal inside the commutator space,
    impossible for a symmetric algebra).  The verdict is stored on the
    returned derivation as `is_outer`.
    """
    from .algebra import annihilator_socle, radical_power

    A.gram()  # symmetrizing form required
    if A.simple_count != 1:
        raise InvalidSocleMap("socle-valued assignments need a local algebra")
    p = A.p
    pairs = [( _as_coords(A, v), _as_coords(A, w)) for v, w in values]
    if not pairs:
        raise InvalidSocleMap("empty assignment")
    vs = np.stack([v for v, _ in pairs])
    ws = np.stack([w for _, w in pairs])
    J, J2 = A.radical, radical_power(A, 2)
    soc = annihilator_socle(A)
    for v in vs:
        if not J.contains(v):
            raise InvalidSocleMap("assignment domain vector outside the radical")
    for w in ws:
        if not soc.contains(w):
            raise InvalidSocleMap("assignment image outside the socle")
    red = reduce_rows_modp(vs, J2.basis, J2.pivots, p) if J2.dim else vs % p
    if Subspace.from_vectors(red, A.n, p=p).dim != vs.shape[0]:
        raise InvalidSocleMap("assignment domain is dependent modulo J^2")
    if vs.shape[0] != J.dim - J2.dim:
        raise InvalidSocleMap(
            f"assignment must cover a full complement basis ({J.dim - J2.dim} vectors)"
        )
    D = Derivation(A, _vanishing_extension(A, vs, ws), check=True)
    if D.matrix.any():
        if inner_derivation_space(A).contains(D.flat):
            raise StructureMismatch("nonzero socle-valued map certified as inner")
        D.is_outer = True
    else:
        D.is_outer = False
    return D


def _solve_columns(mat, rhs, p):
    """One solution of mat @ X = rhs per rhs column, or None if inconsistent."""
    rows, cols = mat.shape
    aug = np.hstack([mat % p, rhs % p])
    red, piv = rref_modp(aug, p)
    if piv.size and piv[-1] >= cols:
        return None
    X = np.zeros((cols, rhs.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        X[c] = red[r, cols:]
    return X


def second_socle_map(A, sigma):
    """The derivation x_i -> sum_j sigma[i,j] y_j from the second-socle pairing.

    {x_i} is a complement basis of J^2 in J and {y_j} is solved from the
    pairing conditions x_i y_j = y_j x_i = delta_ij z inside soc^2(A), z the
    socle generator.  The extension by zero on 1 + J^2 is handed to the
    Leibniz certifier, which accepts it exactly when sigma is antisymmetric
    (so in odd characteristic the accepted sigma form a space of dimension
    r(r-1)/2); a non-antisymmetric sigma raises NotADerivation.
    """
    from .algebra import annihilator_socle, socle_layer

    A.gram()
    if A.simple_count != 1:
        raise InvalidParameters("second-socle maps need a local algebra")
    p = A.p
    xs = _complement_of_square(A)
    r = xs.shape[0]
    sig = np.asarray(sigma, dtype=np.int64)
    if sig.shape != (r, r):
        raise DimensionMismatch(f"sigma must be {r} x {r}")
    sig = sig % p
    soc = annihilator_socle(A)
    lay1 = socle_layer(A, 1)
    assert soc.dim == lay1.dim and lay1.contains_space(soc), "socle definitions disagree"
    assert soc.dim == 1, "local symmetric socle must be a line"
    z = soc.basis[0]
    soc2 = socle_layer(A, 2)
    if soc2.dim - soc.dim != r:
        raise PairingNotFound(
            f"soc^2/soc has dimension {soc2.dim - soc.dim}, need {r}"
        )
    S = soc2.basis
    cond_blocks = []
    rhs_blocks = []
    for j, xv in enumerate(xs):
        L = A.left_mult_matrix(xv)
        R = A.right_mult_matrix(xv)
        cond_blocks.extend([matmul_modp(S, L.T, p), matmul_modp(S, R.T, p)])
        delta = np.zeros((A.n, r), dtype=np.int64)
        delta[:, j] = z
        rhs_blocks.extend([delta, delta])
    E = np.hstack(cond_blocks)  # (s, 2 r n): row c-coeffs of all conditions
    Rhs = np.vstack(rhs_blocks)  # (2 r n, r): column i = conditions for y_i
    X = _solve_columns(E.T, Rhs, p)
    if X is None:
        raise PairingNotFound("pairing conditions are inconsistent in soc^2")
    ys = matmul_modp(X.T, S, p)
    for i in range(r):
        for j, xv in enumerate(xs):
            want = (z * (1 if i == j else 0)) % p
            assert np.array_equal(A.multiply_coords(xv, ys[i]), want)
            assert np.array_equal(A.multiply_coords(ys[i], xv), want)
    red = reduce_rows_modp(ys, soc.basis, soc.pivots, p)
    assert Subspace.from_vectors(red, A.n, p=p).dim == r, "duals dependent mod socle"
    targets = matmul_modp(sig, ys, p)
    D = Derivation(A, _vanishing_extension(A, xs, targets), check=True)
    D.is_outer = bool(D.matrix.any()) and not inner_derivation_space(A).contains(D.flat)
    return D
