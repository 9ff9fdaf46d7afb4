"""Finite-dimensional associative algebras with a distinguished basis.

Two product representations are supported.  A *monomial* algebra has
b_i b_j = coeff[i,j] * b_{idx[i,j]} (coeff 0 encodes a zero product); the
truncated q-commutation algebras and the twisted group algebras are of this
kind and all heavy operations reduce to index arithmetic.  A *tensor* algebra
stores the full (n, n, n) structure-constant cube; the integer lifts and
quotient algebras use it.

The coefficient domain is F_p (p prime) or the integers viewed inside Q
(p=None).  Integer-domain algebras keep int64 structure constants; every
bilinear evaluation guards the bound that makes int64 arithmetic exact.

Construction validates the unit, associativity (exhaustively for monomial
products and for tensors up to dim 50, sampled on >=1200 triples beyond),
the symmetrizing form (symmetric + nondegenerate Gram), and the supplied
radical (two-sided ideal, nilpotent, quotient without nonzero central
nilpotents via the iterated Frobenius kernel).
"""

import math
from functools import lru_cache

import numpy as np

from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    InvalidParameters,
    NotABimodule,
    NotSymmetric,
    ScaleLimitExceeded,
)
from .kernels import matmul_modp, reduce_rows_modp, rref_modp
from .linalg import Matrix, ModpEchelon, Subspace, nullspace

__all__ = [
    "FDAlgebra",
    "AlgebraElement",
    "Bimodule",
    "make_qci",
    "make_group_algebra_cp_cpm1",
    "multiply",
    "center",
    "commutator_space",
    "radical_power",
    "loewy_length",
    "perp",
    "socle_layer",
    "annihilator_socle",
    "subspace_product",
    "annihilator_in",
    "quotient_algebra",
    "bimodule_hom",
    "is_prime",
    "primitive_root",
]

_INT64_GUARD = 2**40  # |values| below this keep every bilinear int64 step exact


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primitive_root(p):
    """Smallest primitive root mod p."""
    factors = set()
    m = p - 1
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors.add(d)
            m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise InvalidParameters(f"no primitive root found mod {p}")  # pragma: no cover


def _mult_order(q, p):
    k, x = 1, q % p
    while x != 1:
        x = x * q % p
        k += 1
        if k > p:
            raise InvalidParameters("element has no finite order; modulus not prime?")
    return k


class FDAlgebra:
    """A finite-dimensional unital associative algebra over F_p or Z.

    `generators` lists elements (basis indices or coordinate vectors) that
    generate the algebra together with the unit; structural shortcuts
    (center, ideal stability, bimodule constraints) quantify over this set,
    which is equivalent to quantifying over all of A.
    """

    def __init__(
        self,
        labels,
        p,
        *,
        mono=None,
        tensor=None,
        unit=0,
        form_index=None,
        radical_rows=None,
        simple_count=1,
        generators=(),
        name="",
        meta=None,
    ):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.p = p
        self.name = name or "algebra"
        self.meta = dict(meta or {})
        self.simple_count = int(simple_count)
        if (mono is None) == (tensor is None):
            raise InvalidParameters("exactly one product representation required")
        if mono is not None:
            if p is None:
                raise InvalidParameters("monomial representation requires a prime field")
            coeff, idx = mono
            self._coeff = np.asarray(coeff, dtype=np.int64)
            self._idx = np.asarray(idx, dtype=np.int64)
            if self._coeff.shape != (self.n, self.n) or self._idx.shape != (self.n, self.n):
                raise DimensionMismatch("monomial tables must be n x n")
            self._coeff = self._coeff % p
            self._tensor = None
        else:
            self._tensor = np.asarray(tensor, dtype=np.int64)
            if self._tensor.shape != (self.n, self.n, self.n):
                raise DimensionMismatch("structure tensor must be n x n x n")
            if p is not None:
                self._tensor = self._tensor % p
            elif np.abs(self._tensor).max(initial=0) >= _INT64_GUARD:
                raise ScaleLimitExceeded("structure constants too large for int64")
            self._coeff = self._idx = None
        if np.isscalar(unit):
            u = np.zeros(self.n, dtype=np.int64)
            u[int(unit)] = 1
            self.unit = u
        else:
            self.unit = np.asarray(unit, dtype=np.int64)
            if self.p is not None:
                self.unit = self.unit % self.p
        self.generators = list(generators)
        self.generator_vecs = []
        for g in self.generators:
            if np.isscalar(g):
                self.generator_vecs.append(self._unitvec(int(g)))
            else:
                gv = np.asarray(g, dtype=np.int64)
                self.generator_vecs.append(gv % p if p is not None else gv)
        self.form_index = form_index
        self._scatter_targets = None
        self._gram = None
        self._center = None
        self._commutator = None
        self._rad_chain = None
        self._socle = None
        self._verify_unit()
        self._verify_associativity()
        if form_index is not None:
            self._verify_form()
        if radical_rows is None:
            raise InvalidParameters("a radical basis must be supplied")
        self.radical = Subspace.from_vectors(
            np.asarray(radical_rows, dtype=np.int64).reshape(-1, self.n)
            if self.p is not None
            else list(radical_rows),
            self.n,
            p=self.p,
        )
        if self.p is not None:
            self._verify_radical()
            if self.n - self.radical.dim != self.simple_count:
                raise InvalidParameters(
                    "simple_count does not match the dimension of the semisimple quotient"
                )

    # ------------------------------------------------------------------
    # products

    def _targets(self):
        # flat scatter targets for multiplication-operator assembly
        if self._scatter_targets is None:
            n = self.n
            ig, jg = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
            self._scatter_targets = (
                (self._idx * n + ig).ravel(),  # right-mult: column i receives b_i * u
                (self._idx * n + jg).ravel(),  # left-mult: column j receives u * b_j
            )
        return self._scatter_targets

    def multiply_coords(self, u, v):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.shape != (self.n,) or v.shape != (self.n,):
            raise DimensionMismatch("coordinate vectors must have length n")
        if self._coeff is not None:
            if self.p is None:
                raise InvalidParameters("integer-domain monomial products not supported")
            w = ((u[:, None] * v[None, :]) % self.p) * self._coeff
            out = np.bincount(
                self._idx.ravel(), weights=w.ravel().astype(np.float64), minlength=self.n
            )
            return np.rint(out).astype(np.int64) % self.p
        if self.p is None:
            hi = max(int(np.abs(u).max(initial=0)), int(np.abs(v).max(initial=0)))
            if hi * hi >= _INT64_GUARD:
                raise ScaleLimitExceeded("integer coordinates too large for int64 path")
            return np.einsum("i,j,ijk->k", u, v, self._tensor)
        return np.einsum("i,j,ijk->k", u % self.p, v % self.p, self._tensor) % self.p

    def left_mult_matrix(self, u):
        """Matrix of a -> u*a on coordinates."""
        u = np.asarray(u, dtype=np.int64)
        n = self.n
        if self._coeff is not None:
            _, t_l = self._targets()
            w = (u[:, None] % self.p) * self._coeff
            out = np.bincount(t_l, weights=w.ravel().astype(np.float64), minlength=n * n)
            return np.rint(out).astype(np.int64).reshape(n, n) % self.p
        m = np.einsum("i,ijk->kj", u, self._tensor)
        return m % self.p if self.p is not None else m

    def right_mult_matrix(self, u):
        """Matrix of a -> a*u on coordinates."""
        u = np.asarray(u, dtype=np.int64)
        n = self.n
        if self._coeff is not None:
            t_r, _ = self._targets()
            w = self._coeff * (u[None, :] % self.p)
            out = np.bincount(t_r, weights=w.ravel().astype(np.float64), minlength=n * n)
            return np.rint(out).astype(np.int64).reshape(n, n) % self.p
        m = np.einsum("j,ijk->ki", u, self._tensor)
        return m % self.p if self.p is not None else m

    def ad_matrix(self, u):
        m = self.left_mult_matrix(u) - self.right_mult_matrix(u)
        return m % self.p if self.p is not None else m

    def basis_product(self, i, j):
        """Coordinates of b_i * b_j."""
        if self._coeff is not None:
            out = np.zeros(self.n, dtype=np.int64)
            out[self._idx[i, j]] = self._coeff[i, j]
            return out
        return self._tensor[i, j].copy()

    # ------------------------------------------------------------------
    # element interface

    def element(self, coords):
        return AlgebraElement(self, coords)

    def basis_element(self, i):
        return AlgebraElement(self, self._unitvec(i))

    @property
    def one(self):
        return AlgebraElement(self, self.unit.copy())

    def label_index(self, label):
        return self.labels.index(label)

    def _unitvec(self, i):
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    # ------------------------------------------------------------------
    # construction-time verification

    def _verify_unit(self):
        eye = np.eye(self.n, dtype=np.int64)
        if not (
            np.array_equal(self.left_mult_matrix(self.unit), eye)
            and np.array_equal(self.right_mult_matrix(self.unit), eye)
        ):
            raise InvalidParameters("unit is not a two-sided identity")

    def _verify_associativity(self):
        n = self.n
        if self._coeff is not None:
            # exhaustive over all basis triples, chunked along the first axis
            c, ix = self._coeff, self._idx
            step = max(1, (4 << 20) // max(n * n, 1))
            for lo in range(0, n, step):
                hi = min(n, lo + step)
                cb, ib = c[lo:hi], ix[lo:hi]
                c1 = cb[:, :, None] * c[ib, :]
                t1 = ix[ib, :]
                c2 = c[None, :, :] * cb[:, ix.ravel()].reshape(hi - lo, n, n)
                t2 = np.take(ib, ix.ravel(), axis=1).reshape(hi - lo, n, n)
                if self.p is not None:
                    c1 %= self.p
                    c2 %= self.p
                ok = (c1 == c2) & ((t1 == t2) | (c1 == 0))
                if not ok.all():
                    raise InvalidParameters("product table is not associative")
            return
        T = self._tensor
        if n <= 50:
            hi = int(np.abs(T).max(initial=0))
            if hi * hi * n >= 2**62:
                raise ScaleLimitExceeded("tensor too large for exact associativity check")
            lhs = np.einsum("ijm,mkl->ijkl", T, T)
            rhs = np.einsum("jkm,iml->ijkl", T, T)
            if self.p is not None:
                lhs %= self.p
                rhs %= self.p
            if not np.array_equal(lhs, rhs):
                raise InvalidParameters("structure tensor is not associative")
        else:
            rng = np.random.default_rng(12345)
            for i, j, k in rng.integers(0, n, size=(1200, 3)):
                lhs = self.multiply_coords(T[i, j], self._unitvec(k))
                rhs = self.multiply_coords(self._unitvec(i), T[j, k])
                if not np.array_equal(lhs, rhs):
                    raise InvalidParameters("structure tensor is not associative")

    def gram(self):
        """Gram matrix G[i,j] = s(b_i b_j) of the symmetrizing form."""
        if self.form_index is None:
            raise NotSymmetric(f"{self.name} carries no symmetrizing form")
        if self._gram is None:
            if self._coeff is not None:
                g = np.where(self._idx == self.form_index, self._coeff, 0)
            else:
                g = self._tensor[:, :, self.form_index].copy()
            self._gram = g % self.p if self.p is not None else g
        return self._gram

    def _verify_form(self):
        g = self.gram()
        if not np.array_equal(g, g.T):
            raise NotSymmetric("form is not symmetric on products")
        if self.p is not None:
            if rref_modp(g, self.p)[0].shape[0] != self.n:
                raise NotSymmetric("form is degenerate")

    def _verify_radical(self):
        J = self.radical
        if J.dim:
            for gv in self.generator_vecs:
                L = self.left_mult_matrix(gv)
                R = self.right_mult_matrix(gv)
                for im in (matmul_modp(J.basis, L.T, self.p), matmul_modp(J.basis, R.T, self.p)):
                    if reduce_rows_modp(im, J.basis, J.pivots, self.p).any():
                        raise InvalidParameters("radical is not a two-sided ideal")
        chain = self._radical_chain()
        if chain[-1].dim != 0:
            raise InvalidParameters("supplied radical is not nilpotent")
        if J.dim == 0:
            self._verify_no_central_nilpotents()
        else:
            # the quotient constructor re-enters here with an empty radical
            # and runs the central-nilpotent check on the quotient itself
            quotient_algebra(self, J, _check_ideal=False, _radical_free=True)

    def _verify_no_central_nilpotents(self):
        # On a commutative F_p-algebra the p-power map is linear and its
        # iterated kernel is the nilradical; restricted to the center it
        # detects the central nilpotents, which a semisimple quotient over a
        # perfect field cannot have.
        C = center(self)
        d = C.dim
        if d == 0:
            return
        piv = C.pivots
        frob = np.zeros((d, d), dtype=np.int64)
        for t in range(d):
            z = self.element(C.basis[t])
            zp = z
            for _ in range(self.p - 1):
                zp = zp * z
            frob[:, t] = zp.coords[piv]
        power = frob
        steps = max(1, math.ceil(math.log(max(self.n, 2)) / math.log(self.p)))
        for _ in range(steps - 1):
            power = matmul_modp(power, frob, self.p)
        if nullspace(Matrix.from_array(power, self.p)).dim != 0:
            raise InvalidParameters("radical quotient has nonzero central nilpotents")

    # ------------------------------------------------------------------

    def _radical_chain(self):
        if self._rad_chain is None:
            self._rad_chain = _radical_chain(self)
        return self._rad_chain

    def __repr__(self):
        dom = f"F_{self.p}" if self.p is not None else "Z"
        return f"<{self.name}: dim {self.n} over {dom}>"


class AlgebraElement:
    """An element of an FDAlgebra, stored by coordinates in the basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        c = np.asarray(coords, dtype=np.int64)
        if c.shape != (algebra.n,):
            raise DimensionMismatch("wrong coordinate length")
        self.coords = c % algebra.p if algebra.p is not None else c

    def _join(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._join(other)
        return AlgebraElement(self.algebra, self.coords + other.coords)

    def __sub__(self, other):
        other = self._join(other)
        return AlgebraElement(self.algebra, self.coords - other.coords)

    def __mul__(self, other):
        if np.isscalar(other):
            return AlgebraElement(self.algebra, self.coords * int(other))
        other = self._join(other)
        return AlgebraElement(
            self.algebra, self.algebra.multiply_coords(self.coords, other.coords)
        )

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, self.coords * int(scalar))

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.coords)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            return NotImplemented
        return bool(np.array_equal(self.coords, other.coords))

    __hash__ = None

    def is_zero(self):
        return not self.coords.any()

    def commutator(self, other):
        return self * other - other * self

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            label = self.algebra.labels[i]
            if label == "1":
                terms.append(str(int(c)))
            else:
                terms.append(label if int(c) == 1 else f"{int(c)}*{label}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# constructors


def _mono_label(s1, i, s2, j):
    if i == 0 and j == 0:
        return "1"
    parts = []
    if i:
        parts.append(s1 if i == 1 else f"{s1}^{i}")
    if j:
        parts.append(s2 if j == 1 else f"{s2}^{j}")
    return "*".join(parts)


@lru_cache(maxsize=None)
def make_qci(p, e, q=None):
    """Truncated q-commutation algebra x^p = y^p = 0, y*x = q*x*y over F_p.

    Basis x^i y^j (0 <= i, j < p) ordered by i*p + j, identity first; the
    symmetrizing form is the coefficient functional at x^(p-1) y^(p-1).
    q defaults to g^((p-1)/e) for the smallest primitive root g; any q of
    multiplicative order e >= 2 is accepted.
    """
    if not is_prime(p) or p == 2 or p > 2**15:
        raise InvalidParameters(f"p must be an odd prime (<= 2**15), got {p}")
    if e < 2 or (p - 1) % e != 0:
        raise InvalidParameters(f"e must satisfy e >= 2 and e | p-1, got e={e}, p={p}")
    if q is None:
        q = pow(primitive_root(p), (p - 1) // e, p)
    q = int(q) % p
    if q == 0 or _mult_order(q, p) != e:
        raise InvalidParameters(f"q={q} does not have multiplicative order {e} mod {p}")
    n = p * p
    ii, jj = np.divmod(np.arange(n), p)
    a, b = ii[:, None], jj[:, None]
    c, d = ii[None, :], jj[None, :]
    qpow = np.array([pow(q, t, p) for t in range(e)], dtype=np.int64)
    alive = (a + c < p) & (b + d < p)
    coeff = np.where(alive, qpow[(b * c) % e], 0)
    idx = np.where(alive, (a + c) * p + (b + d), 0)
    labels = [_mono_label("x", i, "y", j) for i, j in zip(ii, jj)]
    return FDAlgebra(
        labels,
        p,
        mono=(coeff, idx),
        unit=0,
        form_index=n - 1,
        radical_rows=np.eye(n, dtype=np.int64)[1:],
        simple_count=1,
        generators=[p, 1],  # x, y
        name=f"qci(p={p}, e={e}, q={q})",
        meta={"kind": "qci", "p": p, "e": e, "q": q},
    )


@lru_cache(maxsize=None)
def make_group_algebra_cp_cpm1(p):
    """Group algebra of the semidirect product C_p : C_{p-1} over F_p.

    The complement acts through the smallest primitive root g (c a c^-1 =
    a^g), basis a^i c^j ordered by i*(p-1) + j, symmetrizing form = the
    coefficient at the identity, radical = the ideal generated by a - 1.
    """
    if not is_prime(p) or p == 2:
        raise InvalidParameters(f"p must be an odd prime, got {p}")
    g = primitive_root(p)
    m = p - 1
    n = p * m
    ii, jj = np.divmod(np.arange(n), m)
    gpow = np.array([pow(g, t, p) for t in range(m)], dtype=np.int64)
    i1, j1 = ii[:, None], jj[:, None]
    i2, j2 = ii[None, :], jj[None, :]
    idx = ((i1 + i2 * gpow[j1]) % p) * m + (j1 + j2) % m
    coeff = np.ones((n, n), dtype=np.int64)
    labels = [_mono_label("a", i, "c", j) for i, j in zip(ii, jj)]
    a_idx, c_idx = m, 1  # a = a^1 c^0, c = a^0 c^1
    seed = np.zeros(n, dtype=np.int64)
    seed[a_idx] = 1
    seed[0] = p - 1
    return FDAlgebra(
        labels,
        p,
        mono=(coeff, idx),
        unit=0,
        form_index=0,
        radical_rows=_ideal_closure_rows(n, p, coeff, idx, [seed], [a_idx, c_idx]),
        simple_count=p - 1,
        generators=[a_idx, c_idx],
        name=f"k[C{p}:C{p-1}]",
        meta={"kind": "group", "p": p, "g": g},
    )


def _ideal_closure_rows(n, p, coeff, idx, seeds, gen_indices):
    """Basis rows of the two-sided ideal generated by seed vectors, for a
    monomial product given by (coeff, idx) tables."""
    ech = ModpEchelon(n, p)
    frontier = np.asarray(seeds, dtype=np.int64).reshape(-1, n) % p
    ech.add(frontier)
    while frontier.shape[0]:
        images = []
        for g in gen_indices:
            # b_g * v: coordinate t of v lands on idx[g, t] with factor coeff[g, t]
            lm = np.zeros((frontier.shape[0], n), dtype=np.int64)
            np.add.at(lm.T, idx[g, :], (coeff[g, :][:, None] * frontier.T) % p)
            images.append(lm % p)
            # v * b_g: coordinate t lands on idx[t, g] with factor coeff[t, g]
            rm = np.zeros((frontier.shape[0], n), dtype=np.int64)
            np.add.at(rm.T, idx[:, g], (coeff[:, g][:, None] * frontier.T) % p)
            images.append(rm % p)
        fresh = ech.reduce(np.vstack(images))
        fresh = fresh[fresh.any(axis=1)]
        if fresh.shape[0] == 0:
            break
        ech.add(fresh)
        frontier = fresh
    return ech.basis


# ---------------------------------------------------------------------------
# structural operations


def multiply(u, v):
    """Product of two AlgebraElements."""
    return u * v


def _require_modp(A):
    if A.p is None:
        raise InvalidParameters("operation implemented over F_p only")


def center(A):
    """The center of A as a canonical Subspace.

    Commuting with a generating set is equivalent to commuting with every
    element; tests cross-check small instances against the all-basis
    constraint system.
    """
    _require_modp(A)
    if A._center is None:
        blocks = [A.ad_matrix(gv) for gv in A.generator_vecs]
        con = np.vstack(blocks) if blocks else np.zeros((0, A.n), dtype=np.int64)
        A._center = nullspace(Matrix.from_array(con, A.p))
    return A._center


def commutator_space(A):
    """Span of all commutators [b_i, b_j], as a Subspace."""
    _require_modp(A)
    if A._commutator is not None:
        return A._commutator
    n = A.n
    ech = ModpEchelon(n, A.p)
    if A._coeff is not None:
        ar = np.arange(n)
        for i in range(n):
            rows = np.zeros((n, n), dtype=np.int64)
            rows[ar, A._idx[i, :]] += A._coeff[i, :]
            np.subtract.at(rows, (ar, A._idx[:, i]), A._coeff[:, i])
            ech.add(rows)
    else:
        ech.add((A._tensor - A._tensor.transpose(1, 0, 2)).reshape(n * n, n))
    A._commutator = ech.to_subspace()
    return A._commutator


def _coordinate_set_subspace(coords, n, p):
    rows = np.zeros((len(coords), n), dtype=np.int64)
    rows[np.arange(len(coords)), sorted(coords)] = 1
    return Subspace.from_vectors(rows, n, p)


def _radical_chain(A):
    """[A, J, J^2, ...] down to the zero subspace.

    Nilpotency of J is first established honestly by repeated squaring.  The
    chain itself then uses J^(r+1) = J^r * N for a complement N of J^2 in J,
    which holds for nilpotent ideals: J^(r+1) = J^r N + J^(r+2), and the
    correction term disappears by downward induction from the vanishing
    power.  The squared powers double as a cross-check of the chain.
    """
    _require_modp(A)
    chain = [Subspace.full(A.n, A.p), A.radical]
    J = A.radical
    if J.dim == 0:
        return chain
    coordinate = (
        A._coeff is not None
        and bool((np.count_nonzero(J.basis, axis=1) == 1).all())
        and int(J.basis.max(initial=0)) <= 1
    )
    if coordinate:
        # the radical is a span of basis monomials: every power is too, and
        # single-monomial products cannot cancel, so index sets suffice
        mj = {int(np.flatnonzero(row)[0]) for row in J.basis}

        def set_product(s1, s2):
            return {
                int(A._idx[i, j]) for i in s1 for j in s2 if A._coeff[i, j] % A.p != 0
            }

        squares = [mj]  # J^(2^t)
        while squares[-1]:
            nxt = set_product(squares[-1], squares[-1])
            if len(nxt) >= len(squares[-1]):
                raise InvalidParameters("supplied radical is not nilpotent")
            squares.append(nxt)
        level = set_product(mj, mj)
        ncomp = sorted(mj - level)
        r = 2
        while True:
            chain.append(_coordinate_set_subspace(sorted(level), A.n, A.p))
            t = r.bit_length() - 1
            if r == 1 << t and t < len(squares):
                assert level == squares[t], "power chain inconsistent with squaring"
            if not level:
                break
            level = set_product(level, ncomp)
            r += 1
        return chain
    squares = [J]
    while squares[-1].dim:
        nxt = subspace_product(A, squares[-1], squares[-1])
        if nxt.dim >= squares[-1].dim:
            raise InvalidParameters("supplied radical is not nilpotent")
        squares.append(nxt)
    Jb = J.basis
    cur = squares[1]
    chain.append(cur)
    comp_rows = reduce_rows_modp(Jb, cur.basis, cur.pivots, A.p) if cur.dim else Jb
    comp, _ = rref_modp(comp_rows, A.p)
    r = 2
    while cur.dim:
        nech = ModpEchelon(A.n, A.p)
        for row in comp:
            R = A.right_mult_matrix(row)
            nech.add(matmul_modp(cur.basis, R.T, A.p))
        cur = nech.to_subspace()
        chain.append(cur)
        r += 1
        t = r.bit_length() - 1
        if r == 1 << t and t < len(squares):
            assert cur == squares[t], "power chain inconsistent with squaring"
    return chain


def radical_power(A, r):
    """J(A)^r as a Subspace (r=0 gives A itself)."""
    if r < 0:
        raise InvalidParameters("power must be nonnegative")
    chain = A._radical_chain()
    return chain[r] if r < len(chain) else chain[-1]


def loewy_length(A):
    """Least m with J(A)^m = 0."""
    return len(A._radical_chain()) - 1


def perp(A, U):
    """Orthogonal complement {a : s(a U) = 0} under the symmetrizing form."""
    _require_modp(A)
    g = A.gram()
    if U.ambient != A.n:
        raise DimensionMismatch("subspace of a different space")
    if U.dim == 0:
        return Subspace.full(A.n, A.p)
    con = matmul_modp(U.basis, g.T, A.p)
    out = nullspace(Matrix.from_array(con, A.p))
    assert U.dim + out.dim == A.n, "perp dimensions violate nondegeneracy"
    return out


def socle_layer(A, m):
    """soc^m(A) = (J(A)^m)-perp; m=1 is the socle."""
    return perp(A, radical_power(A, m))


def annihilator_socle(A):
    """{v : vJ = Jv = 0}, computed without any symmetrizing form."""
    _require_modp(A)
    if A._socle is None:
        blocks = []
        for row in A.radical.basis:
            blocks.append(A.right_mult_matrix(row))
            blocks.append(A.left_mult_matrix(row))
        con = np.vstack(blocks) if blocks else np.zeros((0, A.n), dtype=np.int64)
        A._socle = nullspace(Matrix.from_array(con, A.p))
    return A._socle


def subspace_product(A, U, V):
    """Span of {u*v : u in U, v in V} as a Subspace."""
    _require_modp(A)
    if U.ambient != A.n or V.ambient != A.n:
        raise DimensionMismatch("subspaces of a different algebra")
    ech = ModpEchelon(A.n, A.p)
    if U.dim and V.dim:
        for u in U.basis:
            L = A.left_mult_matrix(u)
            ech.add(matmul_modp(V.basis, L.T, A.p))
    return ech.to_subspace()


def annihilator_in(A, Z, W):
    """{v in Z : v*W = W*v = 0} as a Subspace of the ambient space."""
    _require_modp(A)
    if Z.ambient != A.n or W.ambient != A.n:
        raise DimensionMismatch("subspaces of a different algebra")
    if Z.dim == 0:
        return Subspace.zero(A.n, A.p)
    if W.dim == 0:
        return Z
    blocks = []
    for w in W.basis:
        blocks.append(matmul_modp(A.right_mult_matrix(w), Z.basis.T, A.p))
        blocks.append(matmul_modp(A.left_mult_matrix(w), Z.basis.T, A.p))
    coeffs = nullspace(Matrix.from_array(np.vstack(blocks), A.p))
    if coeffs.dim == 0:
        return Subspace.zero(A.n, A.p)
    vecs = matmul_modp(coeffs.basis, Z.basis, A.p)
    return Subspace.from_vectors(vecs, A.n, A.p)


def quotient_algebra(A, ideal, _check_ideal=True, _radical_free=False):
    """Quotient of A by a two-sided ideal contained in the radical.

    Quotient coordinates are the non-pivot columns of the ideal's RREF basis;
    the class of v has coordinates reduce(v)[free].  Over the integers the
    ideal must be a span of basis vectors (a coordinate ideal).
    """
    if ideal.ambient != A.n:
        raise DimensionMismatch("ideal of a different algebra")
    if A.p is not None:
        if not _radical_free and not A.radical.contains_space(ideal):
            raise InvalidParameters("quotients only implemented for ideals inside the radical")
        if _check_ideal and ideal.dim:
            for gv in A.generator_vecs:
                for M in (A.left_mult_matrix(gv), A.right_mult_matrix(gv)):
                    im = matmul_modp(ideal.basis, M.T, A.p)
                    if reduce_rows_modp(im, ideal.basis, ideal.pivots, A.p).any():
                        raise InvalidParameters("subspace is not a two-sided ideal")
    else:
        one_hot = all(
            sum(1 for x in row if x != 0) == 1 and max(row) == 1 for row in ideal.basis
        )
        if not one_hot:
            raise InvalidParameters("integer-domain quotients need a coordinate ideal")
    piv = set(int(x) for x in ideal.pivots)
    free = [c for c in range(A.n) if c not in piv]
    nq = len(free)
    free_arr = np.asarray(free, dtype=np.int64)

    if A.p is not None:
        def project(vec):
            return ideal.reduce(vec)[free_arr]
    else:
        def project(vec):
            red = ideal.reduce([int(x) for x in vec])
            out = np.zeros(nq, dtype=np.int64)
            for k, c in enumerate(free):
                x = red[c]
                assert x.denominator == 1, "coordinate ideal reduction left a fraction"
                out[k] = int(x)
            return out

    tensor = np.zeros((nq, nq, nq), dtype=np.int64)
    for a_, fa in enumerate(free):
        for b_, fb in enumerate(free):
            tensor[a_, b_] = project(A.basis_product(fa, fb))
    unit = project(A.unit)
    labels = [f"[{A.labels[f]}]" for f in free]
    if _radical_free or A.p is None:
        rad_rows = np.zeros((0, nq), dtype=np.int64)
        s_count = nq
    else:
        red = (
            np.vstack([project(r)[None, :] for r in A.radical.basis])
            if A.radical.dim
            else np.zeros((0, nq), dtype=np.int64)
        )
        rad_rows = rref_modp(red, A.p)[0] if red.shape[0] else red
        s_count = A.simple_count
    gen_vecs = []
    for gv in A.generator_vecs:
        pg = project(gv)
        if pg.any():
            gen_vecs.append(pg)
    return FDAlgebra(
        labels,
        A.p,
        tensor=tensor,
        unit=unit,
        form_index=None,
        radical_rows=rad_rows,
        simple_count=s_count,
        generators=gen_vecs,
        name=f"{A.name}/ideal(dim {ideal.dim})",
        meta={"kind": "quotient", "of": A.name},
    )


# ---------------------------------------------------------------------------
# bimodules and bimodule homomorphisms


class Bimodule:
    """A subquotient U/W of the regular bimodule of A."""

    def __init__(self, A, sub=None, quotient_by=None):
        _require_modp(A)
        self.algebra = A
        U = sub if sub is not None else Subspace.full(A.n, A.p)
        W = quotient_by if quotient_by is not None else Subspace.zero(A.n, A.p)
        if U.ambient != A.n or W.ambient != A.n:
            raise DimensionMismatch("bimodule spec in the wrong ambient space")
        if not U.contains_space(W):
            raise NotABimodule("quotient_by is not contained in sub")
        for S in (U, W):
            if S.dim == 0:
                continue
            for gv in A.generator_vecs:
                for M in (A.left_mult_matrix(gv), A.right_mult_matrix(gv)):
                    im = matmul_modp(S.basis, M.T, A.p)
                    if reduce_rows_modp(im, S.basis, S.pivots, A.p).any():
                        raise NotABimodule("subspace not stable under both actions")
        self.sub = U
        self.quotient_by = W
        if U.dim:
            rows = reduce_rows_modp(U.basis, W.basis, W.pivots, A.p) if W.dim else U.basis
            basis, pivots = rref_modp(rows, A.p)
        else:
            basis = np.zeros((0, A.n), dtype=np.int64)
            pivots = np.zeros(0, dtype=np.int64)
        self._q = Subspace(A.n, A.p, basis, pivots)
        self.dim = self._q.dim

    def coords(self, vec):
        """Coordinates of the class of vec (vec must lie in the sub-bimodule)."""
        if not self.sub.contains(vec):
            raise NotABimodule("vector outside the sub-bimodule")
        return self._coords_block(np.asarray(vec, dtype=np.int64)[None, :])[0]

    def _coords_block(self, vecs):
        A = self.algebra
        if self.dim == 0:
            return np.zeros((vecs.shape[0], 0), dtype=np.int64)
        W = self.quotient_by
        red = reduce_rows_modp(vecs % A.p, W.basis, W.pivots, A.p) if W.dim else vecs % A.p
        return red[:, self._q.pivots]

    def rep(self, t):
        """Ambient representative of the t-th coordinate class."""
        return self._q.basis[t]

    def action_matrices(self, gvec):
        """(left, right) action of the element gvec on quotient coordinates."""
        A = self.algebra
        if self.dim == 0:
            z = np.zeros((0, 0), dtype=np.int64)
            return z, z
        L = A.left_mult_matrix(gvec)
        R = A.right_mult_matrix(gvec)
        lm = self._coords_block(matmul_modp(self._q.basis, L.T, A.p)).T
        rm = self._coords_block(matmul_modp(self._q.basis, R.T, A.p)).T
        return lm, rm


def bimodule_hom(A, M, N, max_unknowns=5000):
    """Hom over the enveloping algebra between two subquotient bimodules.

    Returns the Subspace of solutions phi (dN x dM matrices, flattened
    row-major).  Constraints are imposed for a generating set of A, which is
    equivalent to imposing them for the whole algebra.
    """
    _require_modp(A)
    if M.algebra is not A or N.algebra is not A:
        raise AlgebraMismatch("bimodules over a different algebra")
    dm, dn = M.dim, N.dim
    if dm * dn > max_unknowns:
        raise ScaleLimitExceeded(f"hom space too large ({dm * dn} unknowns)")
    if dm == 0 or dn == 0:
        return Subspace.zero(dm * dn, A.p)
    eye_m = np.eye(dm, dtype=np.int64)
    eye_n = np.eye(dn, dtype=np.int64)
    blocks = []
    for gv in A.generator_vecs:
        lm_m, rm_m = M.action_matrices(gv)
        lm_n, rm_n = N.action_matrices(gv)
        # phi @ lm_m = lm_n @ phi and phi @ rm_m = rm_n @ phi, phi row-major
        blocks.append(np.kron(eye_n, lm_m.T) - np.kron(lm_n, eye_m))
        blocks.append(np.kron(eye_n, rm_m.T) - np.kron(rm_n, eye_m))
    con = np.vstack(blocks) % A.p
    return nullspace(Matrix.from_array(con, A.p))
