"""Chebyshev polynomials and the characteristic-zero lift of the q = -1 case.

The polynomial layer is exact: `chebyshev_T(n)` is pinned down by the
identity T_n(cos t) = cos nt and computed through the three-term recurrence
T_{n+1} = 2u T_n - T_{n-1} (the factor-free variant of that recurrence is
inconsistent with the defining identity); the monic renormalization
f_n(u) = 2 T_n(u/2) then satisfies f_{n+1} = u f_n - f_{n-1} with f_0 = 2
and f_1 = u, and for an odd prime p every non-leading coefficient of f_p
is divisible by p.

`make_lifted_algebra(p)` realizes the integer algebra on the p^2 monomials
gamma^i delta^j with delta gamma = -gamma delta and f_p(gamma) =
f_p(delta) = 0.  Because f_p is monic over the integers all structure
constants are integers, so the commutator sublattice and the ideal
generated by gamma delta are decided exactly over the integers: Hermite
bases certify where the pivots sit and that every pivot is coprime to p
(purity: inverting everything away from p makes them units).  The
quotient by that ideal is the rank 2p-1 commutative algebra on
1, mu^i, nu^j with mu nu = 0, and its reduction mod p can never be
symmetric: the socle is two dimensional and pairs only against the unit
coordinate, so every candidate Gram matrix has two proportional rows.
`check_lift(p)` bundles the whole suite into pass/fail records.
"""

import math
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import is_prime, make_qci
from .errors import (
    DimensionMismatch,
    InvalidParameters,
    ScaleLimitExceeded,
    StructureMismatch,
)
from .hh1 import _rec
from .kernels import rref_modp
from .linalg import Matrix, Subspace, _hnf_rows, nullspace
from .socle_bounds import _product_tensor

__all__ = [
    "IntPolynomial",
    "chebyshev_T",
    "normalized_f",
    "trig_deviation",
    "ExactAlgebra",
    "make_lifted_algebra",
    "LatticeCertificate",
    "lifted_commutator_space",
    "commutative_quotient",
    "check_D_mod_p_not_symmetric",
    "check_lift",
]

MAX_LIFT_P = 13


def _as_exact(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return x
    raise InvalidParameters(f"not an exact scalar: {x!r}")


class IntPolynomial:
    """Dense univariate polynomial with exact integer or Fraction coefficients.

    Coefficients sit in ascending degree order with the leading one nonzero;
    the zero polynomial has degree -1.  Instances are immutable value objects.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [_as_exact(x) for x in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self):
        return self.coefficients[-1] if self.coefficients else 0

    def is_monic(self):
        return self.leading_coefficient == 1

    def shifted(self, k):
        """The product by u^k."""
        if not self.coefficients:
            return self
        return IntPolynomial((0,) * int(k) + self.coefficients)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __add__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __sub__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, IntPolynomial):
            if not self.coefficients or not other.coefficients:
                return IntPolynomial()
            out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, x in enumerate(self.coefficients):
                if x:
                    for j, y in enumerate(other.coefficients):
                        out[i + j] += x * y
            return IntPolynomial(out)
        return IntPolynomial(tuple(_as_exact(other) * c for c in self.coefficients))

    __rmul__ = __mul__

    def __mod__(self, other):
        """Remainder by a monic divisor (stays over the same coefficient ring)."""
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not other.is_monic():
            raise InvalidParameters("polynomial remainder needs a monic divisor")
        rem = list(self.coefficients)
        d = other.coefficients
        while len(rem) >= len(d):
            lead = rem[-1]
            if lead:
                off = len(rem) - len(d)
                for i, c in enumerate(d):
                    rem[off + i] -= lead * c
            rem.pop()
        return IntPolynomial(rem)

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                term = str(mag)
            else:
                mono = "u" if d == 1 else f"u^{d}"
                term = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"- {term}" if c < 0 else f"+ {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({self})"


def _check_index(n, name="n"):
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, (int, np.integer)):
        raise InvalidParameters(f"{name} must be a nonnegative integer, got {n!r}")
    if n < 0:
        raise InvalidParameters(f"{name} must be a nonnegative integer, got {n}")
    return int(n)


@lru_cache(maxsize=None)
def chebyshev_T(n):
    """The unique integer polynomial with T_n(cos t) = cos nt.

    Computed by T_0 = 1, T_1 = u, T_{n+1} = 2u T_n - T_{n-1}; the leading
    coefficient is 2^(n-1) for n >= 1 and T_n is parity-pure in n.
    """
    n = _check_index(n)
    prev, cur = (1,), (0, 1)
    if n == 0:
        return IntPolynomial(prev)
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, tuple(nxt)
    return IntPolynomial(cur)


@lru_cache(maxsize=None)
def normalized_f(n):
    """Monic renormalization f_n(u) = 2 T_n(u/2).

    Satisfies f_0 = 2, f_1 = u, f_{n+1} = u f_n - f_{n-1}; degree n, monic
    for n >= 1, parity-pure, and f_p has all non-leading coefficients
    divisible by p when p is prime.
    """
    n = _check_index(n)
    prev, cur = (2,), (0, 1)
    if n == 0:
        return IntPolynomial(prev)
    for _ in range(n - 1):
        nxt = [0] + list(cur)
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, tuple(nxt)
    return IntPolynomial(cur)


def trig_deviation(max_n=13, angles=100):
    """Largest |T_n(cos t) - cos nt| over a fixed angle sweep, n <= max_n."""
    worst = 0.0
    for n in range(_check_index(max_n, "max_n") + 1):
        tn = chebyshev_T(n)
        for k in range(angles):
            t = 0.061 + 0.0628 * k
            worst = max(worst, abs(tn(math.cos(t)) - math.cos(n * t)))
    return worst


# ---------------------------------------------------------------------------
# the integer algebra on gamma^i delta^j
# ---------------------------------------------------------------------------


def _reduction_rows(p):
    """Integer coordinates of u^m mod f_p in the power basis, m <= 2p-2."""
    fp = normalized_f(p)
    rows = np.zeros((2 * p - 1, p), dtype=np.int64)
    for m in range(2 * p - 1):
        rem = IntPolynomial((0,) * m + (1,)) % fp
        for d, c in enumerate(rem.coefficients):
            if abs(c) >= 2**31:
                raise ScaleLimitExceeded("reduction coefficients exceed the int64 budget")
            rows[m, d] = c
    return rows


class ExactAlgebra:
    """Free finite-rank integer algebra given by its structure tensor.

    `table[a, b]` holds the coordinates of the product of basis elements a
    and b; the unit is basis element 0 (verified at construction).  The
    arithmetic helpers accumulate in arbitrary-precision Python integers, so
    results are exact regardless of the int64 storage.
    """

    def __init__(self, labels, table, name, meta=None):
        table = np.asarray(table, dtype=np.int64)
        n = len(labels)
        if table.shape != (n, n, n):
            raise DimensionMismatch(f"structure tensor must be {n}^3, got {table.shape}")
        eye = np.eye(n, dtype=np.int64)
        if not (np.array_equal(table[0], eye) and np.array_equal(table[:, 0], eye)):
            raise StructureMismatch("basis element 0 is not a two-sided unit")
        self.labels = list(labels)
        self.table = table
        self.n = n
        self.name = name
        self.meta = dict(meta or {})

    def basis_vector(self, t):
        v = np.zeros(self.n, dtype=object)
        v[t] = 1
        return v

    def multiply(self, u, v):
        """Exact product of two coordinate vectors."""
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        if u.shape != (self.n,) or v.shape != (self.n,):
            raise DimensionMismatch(f"coordinate vectors must have length {self.n}")
        out = np.zeros(self.n, dtype=object)
        for a in np.nonzero(u)[0]:
            rows = self.table[a]
            ca = u[a]
            for b in np.nonzero(v)[0]:
                out += (ca * v[b]) * rows[b].astype(object)
        return out

    def evaluate(self, poly, vec):
        """poly applied to the element with the given coordinates, exactly."""
        acc = np.zeros(self.n, dtype=object)
        power = self.basis_vector(0)
        for c in poly.coefficients:
            if c:
                acc = acc + c * power
            power = self.multiply(power, vec)
        return acc

    def is_commutative(self):
        return bool(np.array_equal(self.table, np.transpose(self.table, (1, 0, 2))))

    def structure_mod_p(self, p):
        return (self.table % p).astype(np.int64)

    def __repr__(self):
        return f"ExactAlgebra({self.name}, rank {self.n})"


def _certify_associativity(table, n):
    """Associativity of a structure tensor: exhaustive when int64-safe and
    small, otherwise 200 seeded basis triples in exact arithmetic."""
    mx = int(np.abs(table).max())
    if n <= 49:
        if n * mx * mx >= 2**62:
            raise ScaleLimitExceeded("structure constants exceed the exact matmul budget")
        flat = table.reshape(n * n, n)
        lhs = (flat @ flat.reshape(n, n * n)).reshape(n, n, n, n)
        rhs = np.transpose(
            (flat @ np.transpose(table, (1, 0, 2)).reshape(n, n * n)).reshape(n, n, n, n),
            (2, 0, 1, 3),
        )
        if not np.array_equal(lhs, rhs):
            raise StructureMismatch("associativity fails on a basis triple")
        return "exhaustive basis triples"
    rng = np.random.default_rng(0)
    samples = 200
    for a, b, c in rng.integers(0, n, size=(samples, 3)):
        lhs = _exact_combo(table[a, b], table[:, c, :])
        rhs = _exact_combo(table[b, c], table[a])
        if not np.array_equal(lhs, rhs):
            raise StructureMismatch("associativity fails on a basis triple")
    return f"{samples} seeded basis triples"


def _exact_combo(vec, mat):
    out = np.zeros(mat.shape[1], dtype=object)
    for k in np.nonzero(vec)[0]:
        out += int(vec[k]) * mat[k].astype(object)
    return out


@lru_cache(maxsize=None)
def make_lifted_algebra(p):
    """Integer algebra on the p^2 monomials gamma^i delta^j (index i*p + j)
    with delta gamma = -gamma delta and f_p(gamma) = f_p(delta) = 0.

    Construction certifies, and raises StructureMismatch on any failure:
    the defining relations as identities of the structure constants,
    associativity (exhaustive for p <= 7, seeded triples above), and that
    reduction mod p reproduces the q = -1 truncated algebra exactly.
    """
    if not is_prime(p) or p == 2:
        raise InvalidParameters(f"p must be an odd prime, got {p}")
    if p > MAX_LIFT_P:
        raise ScaleLimitExceeded(f"the lift is limited to p <= {MAX_LIFT_P}, got {p}")
    red = _reduction_rows(p)
    n = p * p
    ii, jj = np.divmod(np.arange(n), p)
    outer = np.einsum("si,tj->stij", red, red).reshape(2 * p - 1, 2 * p - 1, n)
    sign = 1 - 2 * ((jj[:, None] * ii[None, :]) % 2)
    table = sign[:, :, None] * outer[ii[:, None] + ii[None, :], jj[:, None] + jj[None, :]]
    labels = ["1"]
    for t in range(1, n):
        i, j = divmod(t, p)
        gi = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        dj = "" if j == 0 else ("d" if j == 1 else f"d^{j}")
        labels.append((gi + " " + dj).strip())
    A = ExactAlgebra(labels, table, name=f"lift(p={p})", meta={"kind": "lift", "p": p})
    g_idx, d_idx = p, 1
    if not np.array_equal(table[d_idx, g_idx], -table[g_idx, d_idx]):
        raise StructureMismatch("anticommutation fails")
    fp = normalized_f(p)
    for t in (g_idx, d_idx):
        if np.any(A.evaluate(fp, A.basis_vector(t)) != 0):
            raise StructureMismatch("the defining truncation f_p = 0 fails")
    A.meta["associativity"] = _certify_associativity(table, n)
    if not np.array_equal(A.structure_mod_p(p), _product_tensor(make_qci(p, 2))):
        raise StructureMismatch("reduction mod p does not match the q = -1 truncated algebra")
    return A


# ---------------------------------------------------------------------------
# commutator lattice, ideal, quotient
# ---------------------------------------------------------------------------

LatticeCertificate = namedtuple(
    "LatticeCertificate",
    ["span", "hnf", "pivot_columns", "pivots", "monomial_columns", "pure"],
)


def _hnf_certificate(rows, columns, p):
    """Hermite data deciding whether an integer row span is purely the
    coordinate lattice on `columns` once p is inverted nowhere but away
    from p: pivots exactly on those columns, support confined to them,
    every pivot coprime to p."""
    arr = np.asarray(rows, dtype=np.int64)
    arr = arr[np.any(arr != 0, axis=1)]
    hnf = _hnf_rows([[int(x) for x in row] for row in np.unique(arr, axis=0)])
    pivot_columns = [next(c for c, x in enumerate(row) if x) for row in hnf]
    pivots = [row[c] for row, c in zip(hnf, pivot_columns)]
    support = sorted({c for row in hnf for c, x in enumerate(row) if x})
    columns = list(columns)
    pure = (
        pivot_columns == columns
        and support == columns
        and all(v % p != 0 for v in pivots)
    )
    return hnf, pivot_columns, pivots, pure


def lifted_commutator_space(p):
    """Rational span of all basis commutators plus its Hermite certificate.

    The certificate is `pure` exactly when the pivot columns are the
    monomials gamma^i delta^j with 1 <= i, j <= p-1 and i or j odd, the
    Hermite basis is supported on those columns alone, and every pivot is
    coprime to p.
    """
    A = make_lifted_algebra(p)
    T, n = A.table, A.n
    comms = (T - np.transpose(T, (1, 0, 2))).reshape(n * n, n)
    monomials = [i * p + j for i in range(1, p) for j in range(1, p) if i % 2 or j % 2]
    hnf, cols, pivots, pure = _hnf_certificate(comms, monomials, p)
    span = Subspace.from_vectors(hnf, n, p=None) if hnf else Subspace.zero(n)
    return LatticeCertificate(span, hnf, cols, pivots, monomials, pure)


def _ideal_certificates(A, p):
    """Certificates that the one-sided multiples of gamma delta purely span
    the inner monomial lattice and that this coordinate span is an ideal."""
    T, n = A.table, A.n
    grid = [i * p + j for i in range(1, p) for j in range(1, p)]
    _, _, left_piv, left_pure = _hnf_certificate(T[:, p + 1, :], grid, p)
    _, _, right_piv, right_pure = _hnf_certificate(T[p + 1, :, :], grid, p)
    outside = np.ones(n, dtype=bool)
    outside[grid] = False
    closed = not (
        np.any(T[:, grid][:, :, outside]) or np.any(T[grid, :][:, :, outside])
    )
    return left_pure and right_pure and closed, sorted(set(left_piv + right_piv))


@lru_cache(maxsize=None)
def commutative_quotient(p):
    """The quotient by the ideal generated by gamma delta: the rank 2p-1
    commutative algebra on 1, mu^i, nu^j with mu nu = nu mu = 0 and
    f_p(mu) = f_p(nu) = 0 (mu, nu the images of gamma, delta).

    All certificates are re-verified during construction; a successful
    return is the proof object for the quotient's shape.
    """
    A = make_lifted_algebra(p)
    ok, _ = _ideal_certificates(A, p)
    if not ok:
        raise StructureMismatch("multiples of gamma delta do not purely span an ideal")
    keep = [0] + [i * p for i in range(1, p)] + list(range(1, p))
    qt = A.table[np.ix_(keep, keep)][:, :, keep]
    labels = (
        ["1"]
        + ["mu" if i == 1 else f"mu^{i}" for i in range(1, p)]
        + ["nu" if j == 1 else f"nu^{j}" for j in range(1, p)]
    )
    D = ExactAlgebra(labels, qt, name=f"lift-quotient(p={p})",
                     meta={"kind": "lift_quotient", "p": p})
    if not D.is_commutative():
        raise StructureMismatch("the quotient is not commutative")
    if np.any(D.table[1, p]) or np.any(D.table[p, 1]):
        raise StructureMismatch("mu nu = 0 fails in the quotient")
    fp = normalized_f(p)
    for t in (1, p):
        if np.any(D.evaluate(fp, D.basis_vector(t)) != 0):
            raise StructureMismatch("f_p = 0 fails in the quotient")
    D.meta["associativity"] = _certify_associativity(D.table, D.n)
    return D


# ---------------------------------------------------------------------------
# mod-p reduction of the quotient is never symmetric
# ---------------------------------------------------------------------------


def _truncated_pair_tensor(p):
    """Structure tensor of k[mu, nu]/(mu nu, nu mu, mu^p, nu^p) on the basis
    1, mu^i, nu^j (nu^j at index p-1+j)."""
    m = 2 * p - 1
    T = np.zeros((m, m, m), dtype=np.int64)
    T[0] = np.eye(m, dtype=np.int64)
    T[:, 0] = np.eye(m, dtype=np.int64)
    for i in range(1, p):
        for j in range(1, p):
            if i + j <= p - 1:
                T[i, j, i + j] = 1
                T[p - 1 + i, p - 1 + j, p - 1 + i + j] = 1
    return T


def check_D_mod_p_not_symmetric(p):
    """Records proving the mod-p reduction of the quotient is not symmetric."""
    D = commutative_quotient(p)
    m = D.n
    Tp = D.structure_mod_p(p)
    records = []
    presentation = bool(np.array_equal(Tp, _truncated_pair_tensor(p)))
    _rec(records, "prop6.2.iv.mod_p_relations",
         "k (x) D = k[mu, nu]/(mu nu, nu mu, mu^p, nu^p) exactly",
         True, presentation)

    cons = np.concatenate(
        [
            np.transpose(Tp[:, 1:, :], (1, 2, 0)).reshape(-1, m),
            np.transpose(Tp[1:, :, :], (0, 2, 1)).reshape(-1, m),
        ]
    )
    soc = nullspace(Matrix(cons, p=p))
    expected_soc = np.zeros((2, m), dtype=np.int64)
    expected_soc[0, p - 1] = 1
    expected_soc[1, 2 * p - 2] = 1
    spans_powers = soc == Subspace.from_vectors(expected_soc, m, p=p)
    _rec(records, "prop6.2.iv.socle_dim", "dim soc(k (x) D) = 2", 2, soc.dim,
         note="socle = span{mu^(p-1), nu^(p-1)}" if spans_powers else None)

    # Both socle directions multiply J to zero, so for any functional their
    # Gram rows are supported on the unit coordinate alone: rank <= m - 1.
    certificate = presentation and soc.dim >= 2
    _rec(records, "prop6.2.iv.not_symmetric",
         "k (x) D admits no symmetrizing form", True, certificate,
         note="two socle directions pair only against the unit coordinate, "
              "so every Gram matrix has two proportional rows")

    if p == 3:
        functionals = np.indices((p,) * m).reshape(m, -1).T
        mode = f"all {p**m} functionals"
    else:
        rng = np.random.default_rng(1)
        functionals = rng.integers(0, p, size=(200, m))
        mode = "200 seeded functionals"
    best = 0
    for s in functionals:
        gram = np.einsum("abk,k->ab", Tp, s) % p
        best = max(best, int(rref_modp(gram, p)[0].shape[0]))
    _rec(records, "prop6.2.iv.gram_rank_scan",
         "every scanned functional has a singular Gram matrix", True, best < m,
         note=f"max Gram rank {best} of {m} over {mode}")

    A = make_qci(p, 2)
    rk = int(rref_modp(A.gram(), p)[0].shape[0])
    _rec(records, "prop6.2.iv.qci_negative_control",
         "the q = -1 truncated algebra itself has a nondegenerate symmetric form",
         p * p, rk)
    return records


# ---------------------------------------------------------------------------
# the record suite
# ---------------------------------------------------------------------------


def _parity_pure(poly, n):
    return all(c == 0 for d, c in enumerate(poly.coefficients) if (d - n) % 2)


def check_lift(p):
    """Every lift-related check at one odd prime, as pass/fail records."""
    records = []
    fp = normalized_f(p)
    mono = fp.degree == p and fp.is_monic() and all(
        c % p == 0 for c in fp.coefficients[:-1])
    _rec(records, "cheb.f_p_monomial", "f_p = u^p over F_p", True, bool(mono),
         note=f"f_{p} = {fp}")

    rec_ok = all(
        normalized_f(nn) == normalized_f(nn - 1).shifted(1) - normalized_f(nn - 2)
        and normalized_f(nn).is_monic()
        and _parity_pure(normalized_f(nn), nn)
        for nn in range(2, 101)
    )
    _rec(records, "cheb.recurrence",
         "f_(n+1) = u f_n - f_(n-1), monic and parity-pure, n <= 100",
         True, rec_ok)

    dev = trig_deviation()
    _rec(records, "cheb.trig_identity",
         "max |T_n(cos t) - cos nt| < 1e-9 for n <= 13",
         True, bool(dev < 1e-9), note=f"max deviation {dev:.3e}")

    A = make_lifted_algebra(p)
    g_idx, d_idx = p, 1
    anti = np.array_equal(A.table[d_idx, g_idx], -A.table[g_idx, d_idx])
    trunc = all(
        not np.any(A.evaluate(fp, A.basis_vector(t)) != 0) for t in (g_idx, d_idx))
    _rec(records, "thm.lift.relations",
         "delta gamma = -gamma delta and f_p(gamma) = f_p(delta) = 0",
         True, bool(anti and trunc))
    _rec(records, "thm.lift.basis",
         "the p^2 monomials gamma^i delta^j form a basis", p * p, A.n)
    _rec(records, "thm.lift.associativity", "the structure constants associate",
         True, True, note=f"certified at construction: {A.meta['associativity']}")
    qci_match = np.array_equal(A.structure_mod_p(p), _product_tensor(make_qci(p, 2)))
    _rec(records, "thm.lift.mod_p_reduction",
         "structure constants mod p give the q = -1 truncated algebra",
         True, bool(qci_match))

    cert = lifted_commutator_space(p)
    half = (p - 1) // 2
    _rec(records, "prop6.2.i.commutator_rank",
         "rank of the commutator lattice = (p-1)^2 - ((p-1)/2)^2",
         (p - 1) ** 2 - half * half, cert.span.dim)
    _rec(records, "prop6.2.i.monomial_basis",
         "Hermite pivots sit exactly on the odd inner monomials",
         True, cert.pivot_columns == cert.monomial_columns)
    _rec(records, "prop6.2.i.purity",
         "the commutator lattice is pure away from p", True, cert.pure,
         note=f"pivot values {sorted(set(cert.pivots))}")

    ideal_ok, ideal_piv = _ideal_certificates(A, p)
    _rec(records, "prop6.2.ii.ideal",
         "multiples of gamma delta purely span the inner monomial ideal",
         True, ideal_ok, note=f"pivot values {ideal_piv}")

    D = commutative_quotient(p)
    _rec(records, "prop6.2.iii.quotient_rank",
         "the commutative quotient has rank 2p-1", 2 * p - 1, D.n)
    present = (
        D.is_commutative()
        and not np.any(D.table[1, p])
        and not np.any(D.table[p, 1])
        and all(not np.any(D.evaluate(fp, D.basis_vector(t)) != 0) for t in (1, p))
    )
    _rec(records, "prop6.2.iii.presentation",
         "commutative, mu nu = nu mu = 0, f_p(mu) = f_p(nu) = 0",
         True, bool(present))

    records.extend(check_D_mod_p_not_symmetric(p))
    return records
