"""Chebyshev layer and the integer lift: polynomials, lattices, quotients."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hhone.algebra import make_qci
from hhone.chebyshev import (
    ExactAlgebra,
    IntPolynomial,
    chebyshev_T,
    check_D_mod_p_not_symmetric,
    check_lift,
    commutative_quotient,
    lifted_commutator_space,
    make_lifted_algebra,
    normalized_f,
    trig_deviation,
)
from hhone.errors import (
    DimensionMismatch,
    InvalidParameters,
    ScaleLimitExceeded,
    StructureMismatch,
)
from hhone.linalg import _hnf_rows
from hhone.socle_bounds import _product_tensor

U = IntPolynomial((0, 1))


def odd_primes(limit):
    return [m for m in range(3, limit + 1)
            if all(m % d for d in range(2, int(math.isqrt(m)) + 1))]


# ---------------------------------------------------------------------------
# IntPolynomial
# ---------------------------------------------------------------------------


def test_polynomial_basics():
    z = IntPolynomial(())
    assert z.degree == -1 and not z and str(z) == "0"
    q = IntPolynomial((1, 0, -3, 0, 0))
    assert q.degree == 2 and q.coefficients == (1, 0, -3)
    assert q.leading_coefficient == -3 and not q.is_monic()
    assert str(IntPolynomial((0, -3, 0, 1))) == "u^3 - 3*u"
    assert str(IntPolynomial((-2,))) == "-2"
    assert U.shifted(3) == IntPolynomial((0, 0, 0, 0, 1))
    assert hash(q) == hash(IntPolynomial((1, 0, -3)))
    assert IntPolynomial((Fraction(1, 2),)).coefficients == (Fraction(1, 2),)


def test_polynomial_rejects_inexact_scalars():
    with pytest.raises(InvalidParameters):
        IntPolynomial((0.5,))
    with pytest.raises(InvalidParameters):
        IntPolynomial((True,))
    with pytest.raises(InvalidParameters):
        chebyshev_T(-1)
    with pytest.raises(InvalidParameters):
        normalized_f(2.0)


def test_polynomial_mod_requires_monic_divisor():
    with pytest.raises(InvalidParameters):
        U % IntPolynomial((0, 2))
    assert (U * U * U) % IntPolynomial((0, -3, 0, 1)) == 3 * U


polys = st.lists(st.integers(-9, 9), min_size=0, max_size=6).map(IntPolynomial)


@settings(max_examples=80, deadline=None)
@given(polys, polys, st.integers(-5, 5))
def test_polynomial_ring_laws(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b) + b == a


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_polynomial_remainder_is_a_ring_map(a, b, tail):
    d = IntPolynomial(tail + [1])
    assert ((a % d) * (b % d)) % d == (a * b) % d
    assert (a % d).degree < d.degree or not (a % d)


# ---------------------------------------------------------------------------
# Chebyshev polynomials and the monic family
# ---------------------------------------------------------------------------


def test_chebyshev_first_values():
    assert chebyshev_T(0) == IntPolynomial((1,))
    assert chebyshev_T(1) == U
    assert chebyshev_T(2) == IntPolynomial((-1, 0, 2))
    assert chebyshev_T(3) == IntPolynomial((0, -3, 0, 4))
    assert normalized_f(0) == IntPolynomial((2,))
    assert normalized_f(1) == U
    assert normalized_f(2) == IntPolynomial((-2, 0, 1))
    assert normalized_f(3) == IntPolynomial((0, -3, 0, 1))


def test_chebyshev_leading_coefficient_and_parity():
    for n in range(1, 40):
        tn = chebyshev_T(n)
        assert tn.degree == n
        assert tn.leading_coefficient == 2 ** (n - 1)
        assert all(c == 0 for d, c in enumerate(tn.coefficients) if (d - n) % 2)


def test_normalized_f_is_twice_T_at_half():
    # exact oracle: f_n(u) = 2 T_n(u/2) in Fraction arithmetic
    for n in range(31):
        tn = chebyshev_T(n)
        doubled = IntPolynomial(
            tuple(2 * Fraction(c, 2 ** d) for d, c in enumerate(tn.coefficients)))
        assert doubled == normalized_f(n)


def test_normalized_f_recurrence_monic_parity():
    for n in range(2, 101):
        fn = normalized_f(n)
        assert fn == normalized_f(n - 1).shifted(1) - normalized_f(n - 2)
        assert fn.degree == n and fn.is_monic()
        assert all(c == 0 for d, c in enumerate(fn.coefficients) if (d - n) % 2)


def test_f_p_reduces_to_the_monomial_mod_p():
    for p in odd_primes(97):
        fp = normalized_f(p)
        assert fp.degree == p and fp.is_monic()
        assert all(c % p == 0 for c in fp.coefficients[:-1])


def test_trig_identity_spot_check():
    assert trig_deviation(13, 100) < 1e-9


def test_sine_variant_for_odd_degrees():
    # for odd n: sin(nt) = (-1)^((n-1)/2) T_n(sin t)
    for n in (3, 5, 7, 9):
        tn = chebyshev_T(n)
        sgn = (-1) ** ((n - 1) // 2)
        for k in range(25):
            t = 0.17 + 0.24 * k
            assert abs(sgn * tn(math.sin(t)) - math.sin(n * t)) < 1e-9


# ---------------------------------------------------------------------------
# the lifted algebra
# ---------------------------------------------------------------------------


def test_lift_rejects_bad_parameters():
    for bad in (2, 4, 9, 1):
        with pytest.raises(InvalidParameters):
            make_lifted_algebra(bad)
    with pytest.raises(ScaleLimitExceeded):
        make_lifted_algebra(17)


def test_lift_p3_defining_products():
    A = make_lifted_algebra(3)
    g, d = A.basis_vector(3), A.basis_vector(1)
    gd = A.multiply(g, d)
    dg = A.multiply(d, g)
    assert np.array_equal(gd, -dg)
    assert gd[4] == 1 and np.count_nonzero(gd != 0) == 1
    # gamma^3 = 3 gamma and gamma^2 gamma^2 = 3 gamma^2
    g2 = A.multiply(g, g)
    g3 = A.multiply(g2, g)
    assert g3[3] == 3 and np.count_nonzero(g3 != 0) == 1
    g4 = A.multiply(g2, g2)
    assert g4[6] == 3 and np.count_nonzero(g4 != 0) == 1


def test_lift_truncation_and_unit():
    for p in (3, 5):
        A = make_lifted_algebra(p)
        fp = normalized_f(p)
        for t in (p, 1):
            assert not np.any(A.evaluate(fp, A.basis_vector(t)) != 0)
        one = A.basis_vector(0)
        v = A.basis_vector(p + 1)
        assert np.array_equal(A.multiply(one, v), v)
        assert np.array_equal(A.multiply(v, one), v)


def test_lift_powers_of_one_generator_commute():
    A = make_lifted_algebra(5)
    for i in range(5):
        for j in range(5):
            assert np.array_equal(A.table[i * 5, j * 5], A.table[j * 5, i * 5])
            assert np.array_equal(A.table[i, j], A.table[j, i])


def test_lift_associativity_certificates():
    assert make_lifted_algebra(7).meta["associativity"] == "exhaustive basis triples"
    assert "seeded" in make_lifted_algebra(11).meta["associativity"]


def test_lift_mod_p_reduction_matches_qci():
    for p in (3, 5, 7):
        A = make_lifted_algebra(p)
        assert np.array_equal(A.structure_mod_p(p), _product_tensor(make_qci(p, 2)))


def test_exact_algebra_guards():
    table = np.zeros((2, 2, 2), dtype=np.int64)
    with pytest.raises(StructureMismatch):
        ExactAlgebra(["1", "t"], table, name="broken")
    with pytest.raises(DimensionMismatch):
        ExactAlgebra(["1", "t"], np.zeros((2, 2, 3), dtype=np.int64), name="ragged")
    A = make_lifted_algebra(3)
    with pytest.raises(DimensionMismatch):
        A.multiply(np.zeros(4), A.basis_vector(0))


# ---------------------------------------------------------------------------
# commutator lattice
# ---------------------------------------------------------------------------


def test_commutator_lattice_p3_frozen():
    cert = lifted_commutator_space(3)
    assert cert.span.dim == 3
    assert cert.pivot_columns == [4, 5, 7]
    assert cert.monomial_columns == [4, 5, 7]
    assert cert.pivots == [2, 2, 2]
    assert cert.pure
    # over Q the span is the coordinate space, so gamma delta itself is in it
    e = [0] * 9
    e[4] = 1
    assert cert.span.contains(e)
    # over ZZ it is index 2 in each pivot direction: adjoining gamma delta
    # shrinks the first pivot to 1
    grown = _hnf_rows([list(r) for r in cert.hnf] + [e])
    assert [row[4] for row in grown if any(row)][0] == 1


@pytest.mark.parametrize("p,dim", [(3, 3), (5, 12), (7, 27)])
def test_commutator_lattice_dimensions_and_purity(p, dim):
    cert = lifted_commutator_space(p)
    assert cert.span.dim == dim == (p - 1) ** 2 - ((p - 1) // 2) ** 2
    assert cert.pivot_columns == cert.monomial_columns
    assert set(cert.pivots) == {2}
    assert cert.pure


def test_commutator_monomials_have_an_odd_exponent():
    cert = lifted_commutator_space(5)
    for col in cert.pivot_columns:
        i, j = divmod(col, 5)
        assert 1 <= i <= 4 and 1 <= j <= 4 and (i % 2 or j % 2)


# ---------------------------------------------------------------------------
# commutative quotient and its mod-p reduction
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_quotient_shape(p):
    D = commutative_quotient(p)
    assert D.n == 2 * p - 1
    assert D.is_commutative()
    assert not np.any(D.table[1, p])
    assert not np.any(D.table[p, 1])
    fp = normalized_f(p)
    assert not np.any(D.evaluate(fp, D.basis_vector(1)) != 0)
    assert not np.any(D.evaluate(fp, D.basis_vector(p)) != 0)


def test_quotient_p3_frozen_values():
    D = commutative_quotient(3)
    assert D.labels == ["1", "mu", "mu^2", "nu", "nu^2"]
    m2 = D.basis_vector(2)
    v = D.multiply(m2, m2)
    assert v[2] == 3 and np.count_nonzero(v != 0) == 1


def test_non_symmetry_records_p3():
    recs = check_D_mod_p_not_symmetric(3)
    by_id = {r["id"]: r for r in recs}
    assert all(r["pass"] for r in recs)
    assert by_id["prop6.2.iv.socle_dim"]["computed"] == 2
    assert "mu^(p-1)" in by_id["prop6.2.iv.socle_dim"]["note"]
    assert by_id["prop6.2.iv.gram_rank_scan"]["note"] == (
        "max Gram rank 4 of 5 over all 243 functionals")
    assert by_id["prop6.2.iv.qci_negative_control"]["computed"] == 9


@pytest.mark.parametrize("p", [5, 7])
def test_non_symmetry_records_larger(p):
    recs = check_D_mod_p_not_symmetric(p)
    assert all(r["pass"] for r in recs)
    by_id = {r["id"]: r for r in recs}
    assert by_id["prop6.2.iv.socle_dim"]["computed"] == 2
    assert by_id["prop6.2.iv.qci_negative_control"]["computed"] == p * p


# ---------------------------------------------------------------------------
# the bundled record suite
# ---------------------------------------------------------------------------

LIFT_RECORD_IDS = [
    "cheb.f_p_monomial",
    "cheb.recurrence",
    "cheb.trig_identity",
    "thm.lift.relations",
    "thm.lift.basis",
    "thm.lift.associativity",
    "thm.lift.mod_p_reduction",
    "prop6.2.i.commutator_rank",
    "prop6.2.i.monomial_basis",
    "prop6.2.i.purity",
    "prop6.2.ii.ideal",
    "prop6.2.iii.quotient_rank",
    "prop6.2.iii.presentation",
    "prop6.2.iv.mod_p_relations",
    "prop6.2.iv.socle_dim",
    "prop6.2.iv.not_symmetric",
    "prop6.2.iv.gram_rank_scan",
    "prop6.2.iv.qci_negative_control",
]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_check_lift_all_pass(p):
    recs = check_lift(p)
    assert [r["id"] for r in recs] == LIFT_RECORD_IDS
    assert all(r["pass"] for r in recs)
    by_id = {r["id"]: r for r in recs}
    assert by_id["prop6.2.iii.quotient_rank"]["computed"] == 2 * p - 1
    assert by_id["prop6.2.i.purity"]["note"] == "pivot values [2]"
    assert by_id["prop6.2.ii.ideal"]["note"] == "pivot values [1]"


def test_check_lift_f3_rendering():
    recs = check_lift(3)
    mono = next(r for r in recs if r["id"] == "cheb.f_p_monomial")
    assert mono["note"] == "f_3 = u^3 - 3*u"
