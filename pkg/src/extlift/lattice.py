"""Equivariant splitting of lattice surjections by averaging.

Given a W-equivariant surjection ``rho: Z^r -> Z^s``, any integer right
inverse ``s0`` can be averaged over W into an equivariant rational
section ``s = (1/|W|) sum_w A(w) s0 B(w)^-1``.  Clearing denominators gives
a W-stable sublattice ``Lambda`` (the columns of ``d s``) that rho maps
isomorphically onto ``d Z^s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .exceptions import DimensionMismatch, NotEquivariant, NotSurjective
from .intlinalg import hnf, invariant_factors, right_inverse
from .qmodule import _expand_action


def _obj(A):
    return np.asarray(A, dtype=object)


class QLattice:
    """``Z^rank`` with a W-action by unimodular integer matrices."""

    def __init__(self, group, rank, action=None, check=True):
        self.group = group
        self.rank = int(rank)
        A = _expand_action(group, action, self.rank)
        if A.shape != (group.order, self.rank, self.rank):
            raise DimensionMismatch("action has the wrong shape")
        self.action = A
        self.action.setflags(write=False)
        if check:
            self._check()

    def _check(self):
        A, W = self.action, self.group
        if not np.array_equal(A[0], np.eye(self.rank, dtype=np.int64)):
            raise ValueError("identity of W does not act trivially")
        for g in range(W.order):
            prod = np.einsum("ij,hjk->hik", A[g], A)
            if not np.array_equal(prod, A[W.mul(g, np.arange(W.order))]):
                raise ValueError("action is not a homomorphism")
        # A(w) A(w^-1) = A(e) = I, so every A(w) is unimodular

    def __repr__(self):
        return f"QLattice(rank={self.rank}, |W|={self.group.order})"


class EquivariantSurjection:
    def __init__(self, source, target, matrix, check=True):
        if source.group is not target.group and source.group != target.group:
            raise ValueError("source and target carry different groups")
        self.source = source
        self.target = target
        self.matrix = np.array(matrix, dtype=np.int64).reshape(target.rank, source.rank)
        self.matrix.setflags(write=False)
        if check:
            self.check_equivariant()
            self.check_surjective()

    @property
    def group(self):
        return self.source.group

    def check_equivariant(self):
        R = self.matrix
        lhs = np.einsum("ij,wjk->wik", R, self.source.action)
        rhs = np.einsum("wij,jk->wik", self.target.action, R)
        if not np.array_equal(lhs, rhs):
            raise NotEquivariant("rho does not commute with the actions")

    def check_surjective(self):
        torsion, free = invariant_factors(self.matrix)
        if torsion or free:
            raise NotSurjective(f"cokernel has invariant factors {torsion} and free rank {free}")


@dataclass
class SplittingResult:
    section_numerator: np.ndarray
    denominator: int
    lattice: np.ndarray
    index: int
    quotient_invariants: dict
    details: dict = field(default_factory=dict)


def equivariant_section(rho, s0=None):
    """``(numerator, d)`` with ``rho @ numerator == d I`` and ``numerator / d`` equivariant.

    The fraction is in lowest terms: the gcd of ``d`` and all numerator
    entries is 1, and ``d`` divides ``|W|``.  The result depends on the
    integer right inverse ``s0`` being averaged (by default the one from
    :func:`right_inverse`); transporting ``s0`` along a change of basis
    transports the result.
    """
    rho.check_equivariant()
    if s0 is None:
        s0 = right_inverse(rho.matrix)
    s0 = _obj(s0)
    if not np.array_equal(_obj(rho.matrix).dot(s0), np.eye(rho.target.rank, dtype=object)):
        raise ValueError("s0 is not a right inverse of rho")
    W = rho.group
    A, B = rho.source.action, rho.target.action
    S = np.zeros((rho.source.rank, rho.target.rank), dtype=object)
    for w in range(W.order):
        S = S + _obj(A[w]).dot(s0).dot(_obj(B[W.inverses[w]]))
    g = W.order
    for x in S.ravel():
        g = gcd(g, int(x))
    num = S // g
    d = W.order // g
    if not np.array_equal(_obj(rho.matrix).dot(num), d * np.eye(rho.target.rank, dtype=object)):
        raise AssertionError("averaged section is not a section")
    return num, d


def same_lattice(X, Y):
    return np.array_equal(hnf(X), hnf(Y))


def is_stable(lattice_basis, source):
    """Every ``A(w) Lambda`` spans the same lattice as ``Lambda``."""
    L = _obj(lattice_basis)
    H = hnf(L)
    return all(np.array_equal(hnf(_obj(A).dot(L)), H) for A in source.action)


def quotient_invariants(basis, rank):
    """Structure of ``Z^rank / span(basis)``."""
    basis = _obj(basis).reshape(rank, -1)
    if basis.shape[1] == 0:
        return {"torsion": [], "free_rank": rank}
    torsion, free = invariant_factors(basis)
    return {"torsion": [int(t) for t in torsion], "free_rank": int(free)}


def stable_sublattice(rho, s0=None):
    num, d = equivariant_section(rho, s0)
    s = rho.target.rank
    L = num
    if not is_stable(L, rho.source):
        raise AssertionError("averaged lattice is not W-stable")
    image = _obj(rho.matrix).dot(L)
    index = abs(int(_det(image)))
    return SplittingResult(
        section_numerator=num,
        denominator=int(d),
        lattice=L,
        index=index,
        quotient_invariants=quotient_invariants(L, rho.source.rank),
        details={"group_order": rho.group.order, "target_rank": s},
    )


def _det(M):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    M = [[int(x) for x in row] for row in _obj(M)]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def verify_splitting(result, rho):
    """Re-check every SplittingResult invariant; returns ``{name: bool}``."""
    R = _obj(rho.matrix)
    L = _obj(result.lattice)
    num = _obj(result.section_numerator)
    d = result.denominator
    s = rho.target.rank
    W = rho.group
    image = R.dot(L) if L.size else np.zeros((s, 0), dtype=object)
    report = {}
    report["section"] = bool(np.array_equal(R.dot(num), d * np.eye(s, dtype=object)))
    report["lattice_is_section"] = bool(np.array_equal(L, num))
    report["stable"] = L.shape == (rho.source.rank, s) and is_stable(L, rho.source)
    report["injective"] = L.shape[1] == s and _det(image) != 0
    report["index"] = report["injective"] and abs(int(_det(image))) == result.index == d ** s
    report["denominator_divides_order"] = d > 0 and W.order % d == 0
    report["quotient"] = quotient_invariants(L, rho.source.rank) == result.quotient_invariants
    return report
