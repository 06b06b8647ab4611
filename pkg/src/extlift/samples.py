"""Seeded generators for groups, modules, cocycles and lattice surjections.

Everything takes an explicit ``numpy.random.Generator`` so sweeps are
reproducible from a single seed.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import cohomology as coh
from .exceptions import TooLarge
from .fingroup import dihedral, direct_product, make_cyclic, quaternion, subgroup_closure, symmetric
from .lattice import EquivariantSurjection, QLattice
from .oracle import enumerate_subgroups
from .qmodule import DivisibleWorkspace, FiniteAbelianModule, FpVectorModule


def group_zoo(max_order=8):
    """Named small groups, smallest first."""
    Z = make_cyclic
    zoo = {
        "1": Z(1),
        "Z2": Z(2),
        "Z3": Z(3),
        "Z4": Z(4),
        "Z2xZ2": direct_product(Z(2), Z(2)),
        "Z5": Z(5),
        "Z6": Z(6),
        "S3": symmetric(3),
        "Z7": Z(7),
        "Z8": Z(8),
        "Z2xZ4": direct_product(Z(2), Z(4)),
        "Z2^3": direct_product(direct_product(Z(2), Z(2)), Z(2)),
        "D4": dihedral(4),
        "Q8": quaternion(),
    }
    return {k: G for k, G in zoo.items() if G.order <= max_order}


# --- building blocks for actions -------------------------------------------

def sign_characters(Q):
    """All homomorphisms ``Q -> {+1, -1}`` as integer arrays indexed by Q."""
    out = [np.ones(Q.order, dtype=np.int64)]
    for S in enumerate_subgroups(Q).subgroups:
        if 2 * S.order == Q.order:
            chi = -np.ones(Q.order, dtype=np.int64)
            chi[S.elements] = 1
            out.append(chi)
    return out


def coset_permutations(Q, H):
    """Permutation matrices of Q acting on the left cosets of H."""
    cosets = []
    label = -np.ones(Q.order, dtype=np.int64)
    for g in range(Q.order):
        if label[g] < 0:
            coset = Q.mul(g, H.elements)
            label[coset] = len(cosets)
            cosets.append(int(g))
    k = len(cosets)
    P = np.zeros((Q.order, k, k), dtype=np.int64)
    for x in range(Q.order):
        for j, g in enumerate(cosets):
            P[x, label[Q.mul(x, g)], j] = 1
    return P


def random_unimodular(k, rng, steps=None):
    """Product of random elementary integer matrices (entries stay small)."""
    U = np.eye(k, dtype=np.int64)
    if k < 2:
        return U if rng.integers(2) else -U
    for _ in range(steps if steps is not None else 2 * k):
        i, j = rng.choice(k, size=2, replace=False)
        U[i] += int(rng.choice([-1, 1])) * U[j]
    return U


def _unimodular_inverse(U):
    inv = np.rint(np.linalg.inv(U.astype(float))).astype(np.int64)
    if not np.array_equal(U @ inv, np.eye(len(U), dtype=np.int64)):
        raise AssertionError("matrix is not unimodular")
    return inv


def random_integer_action(Q, max_rank, rng, conjugate=True):
    """Signed permutation action on ``Z^k`` (k <= max_rank), optionally conjugated."""
    subs = [S for S in enumerate_subgroups(Q).subgroups if Q.order // S.order <= max_rank]
    H = subs[int(rng.integers(len(subs)))]
    P = coset_permutations(Q, H)
    chis = sign_characters(Q)
    chi = chis[int(rng.integers(len(chis)))]
    A = P * chi[:, None, None]
    if conjugate and A.shape[1] > 1:
        U = random_unimodular(A.shape[1], rng)
        A = np.einsum("ij,gjk,kl->gil", U, A, _unimodular_inverse(U))
    return A


def block_sum(*actions):
    n = actions[0].shape[0]
    k = sum(a.shape[1] for a in actions)
    out = np.zeros((n, k, k), dtype=np.int64)
    o = 0
    for a in actions:
        r = a.shape[1]
        out[:, o:o + r, o:o + r] = a
        o += r
    return out


# --- modules -----------------------------------------------------------------

_FACTOR_SHAPES = [(2,), (3,), (4,), (5,), (7,), (8,), (2, 2), (2, 4), (3, 3), (4, 4), (2, 2, 2),
                  (2, 8), (2, 2, 4), (4, 8), (8, 8), (2, 2, 2, 2), (2, 4, 8), (4, 4, 4)]


def random_finite_module(Q, rng, max_order=64):
    """A finite module with a randomly chosen (often non-trivial) action.

    Homogeneous factor lists ``(d,)*k`` get an integer signed-permutation
    action reduced mod d; mixed factor lists get the trivial action or a
    sign character acting as ``-1``.
    """
    shapes = [s for s in _FACTOR_SHAPES if int(np.prod(s)) <= max_order]
    factors = shapes[int(rng.integers(len(shapes)))]
    k = len(factors)
    if len(set(factors)) == 1:
        blocks, left = [], k
        while left:
            A = random_integer_action(Q, left, rng)
            blocks.append(A)
            left -= A.shape[1]
        return FiniteAbelianModule(Q, factors, block_sum(*blocks))
    chis = sign_characters(Q)
    chi = chis[int(rng.integers(len(chis)))]
    A = chi[:, None, None] * np.eye(k, dtype=np.int64)[None]
    return FiniteAbelianModule(Q, factors, A)


def random_vector_module(Q, p, rank, rng):
    blocks, left = [], rank
    while left:
        A = random_integer_action(Q, left, rng, conjugate=False)
        blocks.append(A)
        left -= A.shape[1]
    A = block_sum(*blocks) % p
    if rank > 1:
        U = random_unimodular(rank, rng)
        A = np.einsum("ij,gjk,kl->gil", U, A, _unimodular_inverse(U)) % p
    return FpVectorModule(Q, p, rank, A)


def random_workspace(Q, rank, exponent, rng):
    blocks, left = [], rank
    while left:
        A = random_integer_action(Q, left, rng)
        blocks.append(A)
        left -= A.shape[1]
    return DivisibleWorkspace(Q, rank, exponent, block_sum(*blocks))


def factor_shapes(max_order):
    """Invariant-factor lists ``d1 | d2 | ...`` of abelian groups of order 2..max_order."""
    out = []

    def grow(prefix, prod):
        if prefix:
            out.append(tuple(prefix))
        last = prefix[-1] if prefix else 1
        d = 2 if not prefix else last
        while prod * d <= max_order:
            if d % last == 0:
                grow(prefix + [d], prod * d)
            d += 1

    grow([], 1)
    return sorted(out, key=lambda f: (int(np.prod(f)), f))


def automorphisms(factors):
    """All automorphism matrices of ``Z/d1 + ... + Z/dk`` (row i reduced mod d_i)."""
    d = np.asarray(factors, dtype=np.int64)
    k = len(d)
    M = FiniteAbelianModule(make_cyclic(1), factors)
    elems = M.elements()
    entries = [int(d[i]) for i in range(k) for _ in range(k)]
    if int(np.prod(entries)) > 10 ** 5:
        raise TooLarge(f"too many candidate matrices for {factors}")
    out = []
    for flat in np.ndindex(*entries):
        A = np.asarray(flat, dtype=np.int64).reshape(k, k)
        if ((A * d[None, :]) % d[:, None]).any():
            continue
        img = M.index(M.reduce(elems @ A.T))
        if len(np.unique(img)) == len(elems):
            out.append(A)
    return out


def generating_set(Q):
    gens = []
    span = subgroup_closure(Q, [])
    for g in range(Q.order):
        if span.order == Q.order:
            break
        if g not in span:
            gens.append(g)
            span = subgroup_closure(Q, gens)
    return gens


def all_actions(Q, factors, limit=10 ** 5):
    """Every Q-module structure on ``Z/d1 + ... + Z/dk``."""
    gens = generating_set(Q)
    auts = automorphisms(factors)
    if len(auts) ** len(gens) > limit:
        raise TooLarge(f"{len(auts)}^{len(gens)} candidate actions")
    out = []
    for images in itertools.product(auts, repeat=len(gens)):
        try:
            out.append(FiniteAbelianModule(Q, factors, dict(zip(gens, images))))
        except ValueError:
            continue
    return out


def all_small_modules(Q, max_order=4):
    """Every module of order 2..max_order with every possible action."""
    out = []
    for factors in factor_shapes(max_order):
        out.extend(all_actions(Q, factors))
    return out


def is_trivial_action(M):
    return all(M.same_maps(A, np.eye(M.rank, dtype=np.int64)) for A in M.action)


def random_cocycle(M, rng):
    return coh.random_cocycle(M, rng)


def random_instance(rng, max_q=8, max_m=64):
    zoo = list(group_zoo(max_q).values())
    Q = zoo[int(rng.integers(len(zoo)))]
    M = random_finite_module(Q, rng, max_m)
    return Q, M, coh.random_cocycle(M, rng)


# --- lattice surjections -----------------------------------------------------

def _random_piece(W, rng, max_rank):
    """(source action, target action, rho) for one indecomposable-ish piece."""
    kind = int(rng.integers(3))
    chis = sign_characters(W)
    chi = chis[int(rng.integers(len(chis)))]
    if kind == 0 and max_rank >= 1:
        # augmentation of a (twisted) permutation lattice onto Z_chi
        subs = [S for S in enumerate_subgroups(W).subgroups if W.order // S.order <= max_rank]
        H = subs[int(rng.integers(len(subs)))]
        P = coset_permutations(W, H) * chi[:, None, None]
        k = P.shape[1]
        return P, chi[:, None, None].copy(), np.ones((1, k), dtype=np.int64)
    if kind == 1 and max_rank >= 2:
        # projection T + K -> T
        T = random_integer_action(W, max_rank - 1, rng)
        K = random_integer_action(W, max_rank - T.shape[1], rng)
        t = T.shape[1]
        rho = np.hstack([np.eye(t, dtype=np.int64), np.zeros((t, K.shape[1]), dtype=np.int64)])
        return block_sum(T, K), T, rho
    A = random_integer_action(W, max_rank, rng)
    return A, A.copy(), np.eye(A.shape[1], dtype=np.int64)


def random_surjection(W, rng, max_rank=4):
    """A random W-equivariant surjection with source rank <= max_rank."""
    src, tgt, rhos = [], [], []
    left = max_rank
    while left > 0:
        A, B, R = _random_piece(W, rng, left)
        src.append(A)
        tgt.append(B)
        rhos.append(R)
        left -= A.shape[1]
        if rng.random() < 0.5:
            break
    A, B = block_sum(*src), block_sum(*tgt)
    R = np.zeros((B.shape[1], A.shape[1]), dtype=np.int64)
    i = j = 0
    for piece in rhos:
        R[i:i + piece.shape[0], j:j + piece.shape[1]] = piece
        i += piece.shape[0]
        j += piece.shape[1]
    U = random_unimodular(A.shape[1], rng)
    V = random_unimodular(B.shape[1], rng)
    Ui, Vi = _unimodular_inverse(U), _unimodular_inverse(V)
    A = np.einsum("ij,gjk,kl->gil", U, A, Ui)
    B = np.einsum("ij,gjk,kl->gil", V, B, Vi)
    R = V @ R @ Ui
    return EquivariantSurjection(QLattice(W, A.shape[1], A), QLattice(W, B.shape[1], B), R)


def swap_surjection():
    """Z/2 swapping the coordinates of Z^2, summed onto the trivial Z."""
    W = make_cyclic(2)
    return EquivariantSurjection(QLattice(W, 2, {1: [[0, 1], [1, 0]]}), QLattice(W, 1), [[1, 1]])
