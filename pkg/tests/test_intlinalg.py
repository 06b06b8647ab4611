import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extlift.exceptions import DimensionMismatch, NotSurjective
from extlift.intlinalg import (
    MixedSolver,
    hnf,
    invariant_factors,
    right_inverse,
    snf,
    snf_mod,
    solve_mixed,
)
from extlift.lattice import _det

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_snf_examples():
    assert snf(np.eye(3, dtype=int)).diagonal == [1, 1, 1]
    assert snf([[2, 0], [0, 3]]).diagonal == [1, 6]
    res = snf([[1, 1]])
    assert res.S.tolist() == [[1, 0]]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_factorisation(rows):
    A = np.array(rows, dtype=object)
    res = snf(A)
    assert np.array_equal(res.U.dot(A).dot(res.V), res.S)
    assert abs(_det(res.U)) == 1 and abs(_det(res.V)) == 1
    S = res.S
    off = S.copy()
    for i in range(min(S.shape)):
        off[i, i] = 0
    assert not off.any()
    d = res.diagonal
    assert all(x >= 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])


def test_solve_mixed_examples():
    assert list(solve_mixed(np.eye(2, dtype=int), [3, -5], [0, 0])) == [3, -5]
    assert solve_mixed([[2]], [1], [4]) is None
    x = solve_mixed([[2]], [2], [4])
    assert (2 * x[0] - 2) % 4 == 0
    with pytest.raises(DimensionMismatch):
        solve_mixed([[1, 2]], [1, 2], [0])


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_solve_mixed_against_brute_force(data):
    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 2))
    moduli = data.draw(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=m, max_size=m))
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n), min_size=m, max_size=m)))
    b = np.array(data.draw(st.lists(st.integers(0, 5), min_size=m, max_size=m)))
    x = solve_mixed(A, b, moduli)
    mod = np.array(moduli)
    if x is not None:
        assert not ((A @ np.asarray(x, dtype=np.int64) - b) % mod).any()
    else:
        span = int(np.lcm.reduce(mod))
        for cand in itertools.product(range(span), repeat=n):
            assert ((A @ np.array(cand) - b) % mod).any()


def test_integer_path_mixes_moduli():
    # x1 free over Z, second row mod 3
    x = solve_mixed([[1, 0], [0, 2]], [7, 1], [0, 3])
    assert x[0] == 7 and (2 * x[1] - 1) % 3 == 0
    assert solve_mixed([[2]], [1], [0]) is None


def test_right_inverse_examples():
    assert np.array_equal(right_inverse(np.eye(2, dtype=int)), np.eye(2, dtype=object))
    s0 = right_inverse([[1, 1]])
    assert np.array_equal(np.array([[1, 1]], dtype=object).dot(s0), [[1]])
    with pytest.raises(NotSurjective):
        right_inverse([[2]])
    with pytest.raises(NotSurjective):
        right_inverse([[1], [1]])


def test_invariant_factors():
    assert invariant_factors([[2, 0], [0, 3]]) == ([6], 0)
    assert invariant_factors([[1], [1]]) == ([], 1)


def test_hnf_canonical():
    A = np.array([[2, 4], [1, 3]], dtype=object)
    B = A.dot(np.array([[1, 1], [0, 1]], dtype=object))
    assert np.array_equal(hnf(A), hnf(B))
    assert not np.array_equal(hnf([[1], [1]]), hnf([[2], [1]]))
    # dependent columns collapse
    assert hnf([[1, 2], [1, 2]]).shape[1] == 1


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 7), st.sampled_from([2, 3, 4, 6, 8, 12, 30]), st.integers(0, 2 ** 32))
def test_snf_mod_round_trip(m, e, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    A = rng.integers(0, e, size=(m, n))
    F = snf_mod(A, e)
    D = np.zeros((m, n), dtype=np.int64)
    k = len(F.diagonal)
    D[range(k), range(k)] = F.diagonal
    assert not ((F.U @ A @ F.V - D) % e).any()
    assert not ((F.U @ F.Uinv - np.eye(m, dtype=np.int64)) % e).any()
    assert not ((F.V @ F.Vinv - np.eye(n, dtype=np.int64)) % e).any()
    assert all(d == 0 or e % d == 0 for d in F.diagonal)


def test_mixed_solver_reuse():
    S = MixedSolver(np.array([[1, 1], [0, 2]]), [4, 4])
    for b in ([1, 2], [3, 0], [0, 1]):
        x = S.solve(np.array(b))
        if x is not None:
            assert not ((np.array([[1, 1], [0, 2]]) @ x - b) % 4).any()
    assert S.solve(np.array([0, 1])) is None
