"""Seed-driven property tests over random instances."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from extlift import cohomology as coh
from extlift.extension import build_extension, defect_group, is_quasi_complement
from extlift.fingroup import Subgroup
from extlift.lattice import stable_sublattice, verify_splitting
from extlift.oracle import minimal_complement
from extlift.quasisplit import quasi_complement
from extlift.samples import group_zoo, random_instance, random_surjection

seeds = st.integers(0, 2 ** 32 - 1)
ZOO = list(group_zoo(8).values())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_extension_is_a_group(seed):
    rng = np.random.default_rng(seed)
    Q, M, c = random_instance(rng, max_q=8, max_m=8)
    E = build_extension(Q, M, c)
    G = E.as_finite_group()  # validates associativity, identity and inverses
    assert G.order == M.order * Q.order
    assert np.array_equal(E.projection(E.embedded_N.elements), np.zeros(M.order, dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_quasi_complement_shape(seed):
    rng = np.random.default_rng(seed)
    Q, M, c = random_instance(rng, max_q=8, max_m=16)
    res = quasi_complement(Q, M, c)
    assert is_quasi_complement(res.extension, res.F)
    assert res.F.order == res.defect.order * Q.order
    assert (res.defect.order == 1) == (coh.class_order(c) == 1)
    if res.extension.order <= 128:
        E = res.extension
        F = minimal_complement(E, E.embedded_N)
        assert defect_group(E, Subgroup(E, F.elements)).order <= res.defect.order


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_baer_sum_and_killing(seed):
    rng = np.random.default_rng(seed)
    Q, M, c1 = random_instance(rng, max_q=8, max_m=32)
    c2 = coh.random_cocycle(M, rng)
    n1, n2, n = coh.class_order(c1), coh.class_order(c2), coh.class_order(coh.baer_sum(c1, c2))
    assert (n1 * n2 // np.gcd(n1, n2)) % n == 0
    assert coh.coboundary(coh.killing_cochain(c1)) == Q.order * c1


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(1, 4))
def test_lattice_splitting(seed, rank):
    rng = np.random.default_rng(seed)
    W = ZOO[int(rng.integers(len(ZOO)))]
    rho = random_surjection(W, rng, max_rank=rank)
    res = stable_sublattice(rho)
    assert all(verify_splitting(res, rho).values())
