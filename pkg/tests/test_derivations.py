"""Derivation spaces: closed forms vs the raw Leibniz solver."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hhone.algebra import center, make_group_algebra_cp_cpm1, make_qci
from hhone.derivations import (
    Derivation,
    basis_X,
    derivation_space,
    derivations_generic,
    extend_pairs,
    inner_derivation,
    inner_derivation_space,
    monomial_derivation,
    monomial_derivation_exists,
    qci_claimed_constraints,
    qci_inner_monomial,
    qci_pair_kernel,
    qci_relation_constraints,
)
from hhone.errors import (
    AlgebraMismatch,
    NoSuchDerivation,
    NotADerivation,
    ScaleLimitExceeded,
)
from hhone.linalg import Matrix, Subspace, rank

GRID = [(3, 2), (5, 2), (5, 4), (7, 2), (7, 3), (7, 6), (11, 2), (11, 5), (13, 3), (13, 4)]


def der_dim(p, e):
    return p * p + 1 + ((p - 1) // e) ** 2


# ---------------------------------------------------------------------------
# the admissibility system


@pytest.mark.parametrize("p,e", GRID)
def test_constraint_rank_formula(p, e):
    A = make_qci(p, e)
    rows = qci_claimed_constraints(A)
    assert rank(Matrix.from_array(rows, p)) == p * p - 1 - ((p - 1) // e) ** 2


@pytest.mark.parametrize("p,e", GRID)
def test_pair_kernel_matches_relations(p, e):
    # qci_pair_kernel itself asserts closed-form rows == relation rows;
    # this re-derives both sides and checks dimensions line up.
    A = make_qci(p, e)
    ker = qci_pair_kernel(A)
    assert ker.dim == der_dim(p, e)
    rel = qci_relation_constraints(A)
    assert rank(Matrix.from_array(rel, p)) == 2 * p * p - ker.dim


@pytest.mark.parametrize("p,e", GRID)
def test_derivation_space_dimension(p, e):
    A = make_qci(p, e)
    assert derivation_space(A).dim == der_dim(p, e)


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (5, 4)])
def test_derivation_space_equals_generic_solver(p, e):
    A = make_qci(p, e)
    assert derivation_space(A) == derivations_generic(A)


def test_generic_solver_group_algebra_contains_inner():
    A = make_group_algebra_cp_cpm1(3)
    der = derivations_generic(A)
    inner = inner_derivation_space(A)
    assert der.contains_space(inner)
    assert derivation_space(A) == der


def test_generic_solver_guard():
    A = make_qci(11, 2)
    with pytest.raises(ScaleLimitExceeded):
        derivations_generic(A)


# ---------------------------------------------------------------------------
# inner derivations


@pytest.mark.parametrize("p,e", GRID)
def test_inner_dimension_is_n_minus_center(p, e):
    A = make_qci(p, e)
    inner = inner_derivation_space(A)
    assert inner.dim == A.n - center(A).dim
    assert derivation_space(A).contains_space(inner)


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (5, 4), (7, 3)])
def test_inner_monomial_action_closed_form(p, e):
    # ad(x^i y^j) sends x to (q^j - 1) x^(i+1) y^j and y to (1 - q^i) x^i y^(j+1)
    A = make_qci(p, e)
    q = A.meta["q"]
    for i in range(p):
        for j in range(p):
            d = qci_inner_monomial(A, i, j)
            on_x = np.zeros(A.n, dtype=np.int64)
            if i + 1 < p:
                on_x[(i + 1) * p + j] = (pow(q, j, p) - 1) % p
            on_y = np.zeros(A.n, dtype=np.int64)
            if j + 1 < p:
                on_y[i * p + (j + 1)] = (1 - pow(q, i, p)) % p
            assert np.array_equal(d.matrix[:, p], on_x)
            assert np.array_equal(d.matrix[:, 1], on_y)


# ---------------------------------------------------------------------------
# monomial derivations and the distinguished family


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (5, 4), (7, 3), (7, 6)])
def test_monomial_derivation_existence_matches_kernel(p, e):
    # f_{a,b} exists iff the pair (x^a y^b, 0) is admissible, and mirrored;
    # the closed-form existence test must agree with kernel membership.
    A = make_qci(p, e)
    ker = qci_pair_kernel(A)
    n = A.n
    for a in range(p):
        for b in range(p):
            fpair = np.zeros(2 * n, dtype=np.int64)
            fpair[a * p + b] = 1
            assert monomial_derivation_exists(A, "f", a, b) == ker.contains(fpair)
            gpair = np.zeros(2 * n, dtype=np.int64)
            gpair[n + a * p + b] = 1
            assert monomial_derivation_exists(A, "g", a, b) == ker.contains(gpair)


def test_monomial_derivation_rejects_inadmissible():
    A = make_qci(5, 2)
    with pytest.raises(NoSuchDerivation):
        monomial_derivation(A, "f", 2, 1)  # a-1 = 1 not divisible by e, b != p-1
    with pytest.raises(NoSuchDerivation):
        monomial_derivation(A, "g", 1, 2)


@pytest.mark.parametrize("p,e", [(5, 2), (7, 3)])
def test_monomial_derivation_action(p, e):
    A = make_qci(p, e)
    q = A.meta["q"]
    fam = basis_X(A)
    for kind, a, b, D in fam:
        for c in range(p):
            for d in range(p):
                got = D.matrix[:, c * p + d]
                want = np.zeros(A.n, dtype=np.int64)
                if kind == "f":
                    s = sum(pow(q, b * t, p) for t in range(c)) % p
                    ti, tj = a + c - 1, b + d
                else:
                    s = sum(pow(q, a * t, p) for t in range(d)) % p
                    ti, tj = a + c, b + d - 1
                if 0 <= ti < p and 0 <= tj < p:
                    want[ti * p + tj] = s
                assert np.array_equal(got, want), (kind, a, b, c, d)


def test_frozen_family_p3():
    A = make_qci(3, 2)
    fam = {(k, a, b) for k, a, b, _ in basis_X(A)}
    assert fam == {
        ("f", 1, 0), ("f", 1, 2), ("f", 0, 2), ("f", 2, 2),
        ("g", 0, 1), ("g", 2, 1), ("g", 2, 0), ("g", 2, 2),
    }


@pytest.mark.parametrize("p,e", GRID)
def test_family_spans_complement_of_inner(p, e):
    A = make_qci(p, e)
    fam = basis_X(A)
    inner = inner_derivation_space(A)
    der = derivation_space(A)
    flats = np.stack([D.flat for _, _, _, D in fam])
    span = Subspace.from_vectors(flats, A.n * A.n, p=p)
    assert span.dim == len(fam) == der.dim - inner.dim
    assert span.intersect(inner).dim == 0
    assert span.plus(inner) == der


# ---------------------------------------------------------------------------
# the Derivation class


def test_certification_rejects_non_derivation():
    A = make_qci(3, 2)
    m = np.zeros((9, 9), dtype=np.int64)
    m[0, 3] = 1  # sends x to 1; no derivation does that here
    with pytest.raises(NotADerivation):
        Derivation(A, m)


def test_certification_rejects_nonzero_on_unit():
    A = make_qci(3, 2)
    m = np.zeros((9, 9), dtype=np.int64)
    m[1, 0] = 1
    with pytest.raises(NotADerivation):
        Derivation(A, m)


def test_bracket_and_arithmetic_are_derivations():
    A = make_qci(5, 2)
    f = monomial_derivation(A, "f", 1, 0)
    g = monomial_derivation(A, "g", 0, 1)
    for D in (f.bracket(g), f + g, 3 * f, f - g):
        Derivation(A, D.matrix)  # re-certify explicitly


def test_p_power_of_euler_maps():
    for p, e in [(3, 2), (5, 4), (7, 2)]:
        A = make_qci(p, e)
        f10 = monomial_derivation(A, "f", 1, 0)
        g01 = monomial_derivation(A, "g", 0, 1)
        assert f10.p_power() == f10
        assert g01.p_power() == g01


def test_derivation_on_elements():
    A = make_qci(3, 2)
    f = monomial_derivation(A, "f", 1, 0)
    x = A.basis_element(3)
    y = A.basis_element(1)
    assert f(x) == x
    assert f(y).coords.sum() == 0
    assert f(x * y) == x * y


def test_algebra_mismatch():
    A, B = make_qci(3, 2), make_qci(5, 2)
    f = monomial_derivation(A, "f", 1, 0)
    h = monomial_derivation(B, "f", 1, 0)
    with pytest.raises(AlgebraMismatch):
        f.bracket(h)
    with pytest.raises(AlgebraMismatch):
        f(B.basis_element(1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_inner_derivations_certify_and_leibniz(seed_u, seed_v):
    A = make_qci(5, 2)
    rng = np.random.default_rng(seed_u * 2 ** 20 + seed_v)
    u = rng.integers(0, 5, size=A.n)
    D = inner_derivation(A, u)
    Derivation(A, D.matrix)  # full certificate
    a = A.element(rng.integers(0, 5, size=A.n))
    b = A.element(rng.integers(0, 5, size=A.n))
    assert D(a * b) == D(a) * b + a * D(b)


@settings(max_examples=10, deadline=None)
@given(st.data())
def test_extended_pairs_respect_their_pair(data):
    A = make_qci(5, 4)
    ker = qci_pair_kernel(A)
    coeffs = data.draw(
        st.lists(st.integers(0, 4), min_size=ker.dim, max_size=ker.dim)
    )
    vec = (np.asarray(coeffs, dtype=np.int64) @ ker.basis) % 5
    mat = extend_pairs(A, vec[None, :])[0]
    D = Derivation(A, mat)
    n = A.n
    assert np.array_equal(D.matrix[:, 5], vec[:n])   # column of x
    assert np.array_equal(D.matrix[:, 1], vec[n:])   # column of y
