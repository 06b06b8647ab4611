import numpy as np
import pytest

from extlift.fingroup import make_cyclic
from extlift.qmodule import (
    DivisibleWorkspace,
    FiniteAbelianModule,
    FpVectorModule,
    abelian_invariants,
    act,
    check_module_map,
    divide,
    scalar_mul,
    torsion_submodule,
)
from extlift.exceptions import NotEquivariant
from extlift.samples import random_finite_module, random_workspace

Z2 = make_cyclic(2)


def test_act_examples():
    M = FiniteAbelianModule(Z2, (4,), {1: [[-1]]})
    assert list(act(M, 0, [3])) == [3]
    assert list(act(M, 1, [1])) == [3]
    S = FiniteAbelianModule(Z2, (3, 3), {1: [[0, 1], [1, 0]]})
    assert list(act(S, 1, [1, 2])) == [2, 1]


def test_action_validation():
    with pytest.raises(ValueError):
        # Z/2 -> Z/4 component is not well defined
        FiniteAbelianModule(Z2, (2, 4), {1: [[1, 0], [1, 1]]})
    with pytest.raises(ValueError):
        FiniteAbelianModule(make_cyclic(3), (5,), {1: [[2]]})
    with pytest.raises(ValueError):
        DivisibleWorkspace(Z2, 1, 4, {1: [[3]]})
    with pytest.raises(ValueError):
        FpVectorModule(Z2, 4, 1)


def test_generator_actions_expand():
    Z4 = make_cyclic(4)
    M = FiniteAbelianModule(Z4, (5,), {1: [[2]]})
    assert [int(M.action[g][0, 0]) for g in range(4)] == [1, 2, 4, 3]


def test_scalar_mul_examples():
    M = FiniteAbelianModule(Z2, (4,))
    assert list(scalar_mul(M, 0, [3])) == [0]
    assert list(scalar_mul(M, 3, [3])) == [1]
    W = DivisibleWorkspace(Z2, 1, 4)
    assert W.as_fractions(scalar_mul(W, 2, [1])) == [pytest.approx(0.5)]


def test_torsion_examples():
    M = FiniteAbelianModule(Z2, (2, 4))
    assert torsion_submodule(M, 1).sub.order == 1
    T = torsion_submodule(M, 2)
    assert T.sub.factors == (2, 2)
    got = {tuple(v) for v in T.include(T.sub.elements())}
    assert got == {(a, b) for a in (0, 1) for b in (0, 2)}
    W = DivisibleWorkspace(Z2, 2, 1)
    T = torsion_submodule(W, 3)
    assert T.sub.factors == (3, 3) and T.ambient.D == 3


def test_torsion_equivariance(rng):
    for _ in range(30):
        M = random_finite_module(make_cyclic(4), rng, 64)
        n = int(rng.choice([2, 4, 8]))
        T = torsion_submodule(M, n)
        el = T.sub.elements()
        inc = T.include(el)
        assert not M.scalar_mul(n, inc).any()
        assert len(np.unique(M.index(inc))) == T.sub.order
        assert T.sub.order == int((M.index(M.scalar_mul(n, M.elements())) == 0).sum())
        moved = T.sub.act_all(el)
        for g in range(4):
            assert np.array_equal(T.include(moved[g]), M.act_all(inc)[g])


def test_divide_examples():
    W = DivisibleWorkspace(Z2, 1, 2)
    m, W2 = divide(W, [0], 5)
    assert list(m) == [0]
    m, W2 = divide(W, [1], 2)
    assert W2.D == 4 and list(m) == [1]
    W = DivisibleWorkspace(Z2, 2, 3)
    m, W9 = divide(W, [1, 2], 3)
    assert W9.D == 9 and list(m) == [1, 2]
    # 3 * (1/9, 2/9) = (1/3, 2/3)
    assert list(W9.scalar_mul(3, m)) == list(W.promote([1, 2], 3))


def test_divide_round_trip(rng):
    for _ in range(50):
        W = random_workspace(make_cyclic(2), int(rng.integers(1, 4)), int(rng.integers(1, 7)), rng)
        n = int(rng.integers(1, 13))
        m = rng.integers(0, W.D, size=W.rank)
        q, Wn = divide(W, m, n)
        assert np.array_equal(Wn.scalar_mul(n, q), Wn.reduce(W.promote(m, n)))


def test_promotion_is_equivariant(rng):
    W = random_workspace(make_cyclic(4), 3, 5, rng)
    W3 = W.with_exponent(15)
    m = rng.integers(0, 5, size=3)
    for g in range(4):
        assert np.array_equal(W3.act(g, W.promote(m, 3)), W3.reduce(W.promote(W.act(g, m), 3)))


def test_fp_span():
    V = FpVectorModule(make_cyclic(1), 3, 3)
    basis = V.span([[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert basis.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert len(V.span_elements(basis)) == 9


def test_module_maps():
    M4 = FiniteAbelianModule(Z2, (4,))
    M2 = FiniteAbelianModule(Z2, (2,))
    check_module_map([[1]], M4, M2)
    with pytest.raises(NotEquivariant):
        check_module_map([[1]], M2, M4)


def test_abelian_invariants():
    M = FiniteAbelianModule(Z2, (2, 4))
    assert abelian_invariants(M, M.elements()) == (2, 4)
    assert abelian_invariants(M, [[0, 0]]) == ()
