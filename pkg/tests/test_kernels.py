"""The compiled and numpy mod-p kernels must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hhone.kernels import IMPLEMENTATIONS, matmul_modp, reduce_rows_modp, rref_modp

PRIMES = [2, 3, 7, 31, 251, 32749]


def _rand(rng, shape, p):
    return rng.integers(0, p, size=shape, dtype=np.int64)


def test_matmul_is_exact_against_python_ints():
    rng = np.random.default_rng(0)
    p = 32749  # largest supported prime; products stress the accumulator
    a = _rand(rng, (40, 60), p)
    b = _rand(rng, (60, 30), p)
    got = matmul_modp(a, b, p)
    want = np.empty((40, 30), dtype=np.int64)
    al, bl = a.tolist(), b.T.tolist()
    for i in range(40):
        for j in range(30):
            want[i, j] = sum(x * y for x, y in zip(al[i], bl[j])) % p
    assert np.array_equal(got, want)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(PRIMES))
def test_backends_agree_on_rref(seed, p):
    if len(IMPLEMENTATIONS) < 2:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(seed)
    a = _rand(rng, (17, 23), p)
    results = {}
    for name, mod in IMPLEMENTATIONS.items():
        basis, pivots = mod.rref(a.copy(), p)
        results[name] = (basis, pivots)
    names = sorted(results)
    b0, p0 = results[names[0]]
    for other in names[1:]:
        b1, p1 = results[other]
        assert np.array_equal(b0, b1), f"{names[0]} vs {other}"
        assert np.array_equal(p0, p1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(PRIMES))
def test_backends_agree_on_matmul(seed, p):
    if len(IMPLEMENTATIONS) < 2:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(seed)
    a = _rand(rng, (9, 31), p)
    b = _rand(rng, (31, 13), p)
    outs = [mod.matmul(a, b, p) for mod in IMPLEMENTATIONS.values()]
    for o in outs[1:]:
        assert np.array_equal(outs[0], o)


def test_reduce_rows_zeroes_pivot_columns():
    p = 11
    rng = np.random.default_rng(7)
    a = _rand(rng, (8, 12), p)
    basis, pivots = rref_modp(a, p)
    v = _rand(rng, (5, 12), p)
    red = reduce_rows_modp(v, basis, pivots, p)
    assert not red[:, pivots].any()
    # reduction only subtracts rows of the basis
    for orig, r in zip(v, red):
        diff = (orig - r) % p
        # diff must be a combination of basis rows: reducing it gives zero
        again = reduce_rows_modp(diff[None, :], basis, pivots, p)
        assert not again.any()


def test_rref_handles_empty_and_zero_input():
    p = 5
    empty = np.zeros((0, 4), dtype=np.int64)
    basis, pivots = rref_modp(empty, p)
    assert basis.shape == (0, 4) and pivots.size == 0
    zeros = np.zeros((3, 4), dtype=np.int64)
    basis, pivots = rref_modp(zeros, p)
    assert basis.shape[0] == 0
