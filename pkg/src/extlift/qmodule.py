"""Finite abelian groups with an action of a finite group Q.

Elements are integer vectors; component ``i`` lives in ``Z/factors[i]``.
The action is stored per element of Q as an integer matrix acting on the
left on column vectors, so ``act(g, m) = A[g] @ m`` reduced componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .exceptions import NotEquivariant


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _expand_action(Q, action, k):
    """Per-element matrices from a dict ``{element: matrix}``.

    If every element of Q is a key the dict is taken as given; otherwise
    the keys are generators and the action is spread over Q by BFS.
    Consistency of the BFS result is checked afterwards by the
    homomorphism test in ``FiniteAbelianModule._check``.
    """
    if action is None:
        return np.broadcast_to(np.eye(k, dtype=np.int64), (Q.order, k, k)).copy()
    if isinstance(action, np.ndarray) and action.ndim == 3:
        return np.array(action, dtype=np.int64)
    action = {int(g): np.array(m, dtype=np.int64).reshape(k, k) for g, m in action.items()}
    if len(action) == Q.order and set(action) == set(range(Q.order)):
        return np.stack([action[g] for g in range(Q.order)])
    mats = {0: np.eye(k, dtype=np.int64)}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, A in action.items():
                gh = int(Q.mul(g, h))
                if gh not in mats:
                    mats[gh] = A @ mats[h]
                    nxt.append(gh)
        frontier = nxt
    if len(mats) != Q.order:
        raise ValueError("action generators do not generate Q")
    return np.stack([mats[g] for g in range(Q.order)])


class FiniteAbelianModule:
    """``Z/d1 + ... + Z/dk`` with a Q-action by automorphisms."""

    kind = "finite"

    def __init__(self, group, factors, action=None, check=True):
        self.group = group
        self.factors = tuple(int(d) for d in factors)
        if any(d < 1 for d in self.factors):
            raise ValueError("factors must be positive")
        k = len(self.factors)
        self.rank = k
        self.moduli = np.asarray(self.factors, dtype=np.int64).reshape(k)
        self.exponent = _lcm(self.factors)
        self.order = int(np.prod(self.moduli)) if k else 1
        A = _expand_action(group, action, k)
        if A.shape != (group.order, k, k):
            raise ValueError("action has the wrong shape")
        self.action = self.reduce_matrix(A)
        self.action.setflags(write=False)
        if check:
            self._check()

    def reduce_matrix(self, A):
        """Reduce row ``i`` of each matrix mod ``d_i`` (the canonical form)."""
        return np.asarray(A, dtype=np.int64) % self.moduli[:, None]

    def _check(self):
        A, d = self.action, self.moduli
        # column j is the image of e_j, which has order d_j
        if ((A * d[None, None, :]) % d[None, :, None]).any():
            raise ValueError("action matrices are not well defined on the factors")
        if not self.same_maps(A[0], np.eye(self.rank, dtype=np.int64)):
            raise ValueError("identity of Q does not act trivially")
        Q = self.group
        for g in range(Q.order):
            prod = np.einsum("ij,hjk->hik", A[g], A)
            target = A[Q.mul(g, np.arange(Q.order))]
            if ((prod - target) % d[None, :, None]).any():
                raise ValueError("action is not a homomorphism")

    def same_maps(self, A, B):
        return not ((np.asarray(A) - np.asarray(B)) % self.moduli[:, None]).any()

    def reduce(self, m):
        return np.asarray(m, dtype=np.int64) % self.moduli

    def zero(self):
        return np.zeros(self.rank, dtype=np.int64)

    def act(self, g, m):
        return self.reduce(self.action[g] @ np.asarray(m, dtype=np.int64))

    def act_all(self, m):
        """``A[g] @ m`` for every g, shape ``(|Q|,) + m.shape``."""
        m = np.asarray(m, dtype=np.int64)
        return np.einsum("gij,...j->g...i", self.action, m) % self.moduli

    def scalar_mul(self, n, m):
        return self.reduce(int(n) * np.asarray(m, dtype=np.int64))

    def add(self, a, b):
        return self.reduce(np.asarray(a) + np.asarray(b))

    def neg(self, a):
        return self.reduce(-np.asarray(a))

    def elements(self):
        """All elements, shape ``(order, rank)``, in index order."""
        if not self.rank:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.factors).reshape(self.rank, -1).T
        return grids.astype(np.int64)

    def index(self, m):
        """Mixed-radix index of element(s); last component varies fastest."""
        m = np.asarray(m, dtype=np.int64)
        if not self.rank:
            return np.zeros(m.shape[:-1], dtype=np.int64)
        return np.ravel_multi_index(tuple(np.moveaxis(m % self.moduli, -1, 0)), self.factors)

    def element(self, i):
        if not self.rank:
            return np.zeros(np.shape(i) + (0,), dtype=np.int64)
        return np.stack(np.unravel_index(i, self.factors), axis=-1).astype(np.int64)

    def is_submodule(self, elements):
        """True if the given element set is closed under +, - and Q."""
        idx = set(self.index(elements).tolist())
        el = np.asarray(elements)
        sums = self.index(el[:, None, :] + el[None, :, :])
        images = self.index(self.act_all(el))
        return set(sums.ravel().tolist()) <= idx and set(images.ravel().tolist()) <= idx

    def __repr__(self):
        return f"{type(self).__name__}(factors={self.factors}, |Q|={self.group.order})"


class FpVectorModule(FiniteAbelianModule):
    """``F_p^r`` with Q acting by invertible matrices mod p."""

    kind = "fp"

    def __init__(self, group, p, rank, action=None, check=True):
        p = int(p)
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        super().__init__(group, (p,) * int(rank), action, check=check)

    def span(self, vectors):
        """Row-reduced basis of the F_p-span of the given vectors."""
        p = self.p
        rows = [list(v) for v in np.asarray(vectors, dtype=np.int64).reshape(-1, self.rank) % p]
        basis = []
        pivots = []
        for row in rows:
            row = [x % p for x in row]
            for b, c in zip(basis, pivots):
                if row[c]:
                    f = row[c]
                    row = [(x - f * y) % p for x, y in zip(row, b)]
            lead = next((c for c, x in enumerate(row) if x), None)
            if lead is None:
                continue
            inv = pow(int(row[lead]), -1, p)
            row = [x * inv % p for x in row]
            for i, b in enumerate(basis):
                if b[lead]:
                    f = b[lead]
                    basis[i] = [(x - f * y) % p for x, y in zip(b, row)]
            basis.append(row)
            pivots.append(lead)
        order = np.argsort(pivots)
        return np.asarray([basis[i] for i in order], dtype=np.int64).reshape(-1, self.rank)

    def span_elements(self, basis):
        """All F_p-combinations of the basis rows."""
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, self.rank)
        if len(basis) == 0:
            return np.zeros((1, self.rank), dtype=np.int64)
        coeffs = np.indices((self.p,) * len(basis)).reshape(len(basis), -1).T
        return (coeffs @ basis) % self.p


class DivisibleWorkspace(FiniteAbelianModule):
    """The ``D``-torsion of ``(Q/Z)^r``: element ``m`` stands for ``m / D``.

    Q acts through unimodular integer matrices on ``Z^r``, hence on
    ``(Q/Z)^r`` and on its ``D``-torsion for every ``D``.
    """

    kind = "divisible"

    def __init__(self, group, rank, exponent, action=None, check=True):
        rank, exponent = int(rank), int(exponent)
        if exponent < 1:
            raise ValueError("exponent must be positive")
        A = _expand_action(group, action, rank)
        dets = np.rint(np.linalg.det(A.astype(float))).astype(int) if rank else np.ones(group.order)
        if check and not np.isin(dets, (-1, 1)).all():
            raise ValueError("workspace action must be unimodular")
        self.integer_action = np.array(A, dtype=np.int64)
        self.integer_action.setflags(write=False)
        self.D = exponent
        super().__init__(group, (exponent,) * rank, A, check=check)
        if check:
            Q = group
            for g in range(Q.order):
                prod = np.einsum("ij,hjk->hik", A[g], A)
                if not (prod == A[Q.mul(g, np.arange(Q.order))]).all():
                    raise ValueError("integer action is not a homomorphism")

    def with_exponent(self, exponent):
        return DivisibleWorkspace(self.group, self.rank, exponent, self.integer_action, check=False)

    def promote(self, m, factor):
        """Re-express elements at exponent ``D * factor``."""
        return np.asarray(m, dtype=np.int64) * int(factor)

    def as_fractions(self, m):
        from fractions import Fraction

        return [Fraction(int(x), self.D) for x in np.asarray(m).ravel()]


@dataclass(frozen=True)
class TorsionInclusion:
    """``sub`` is ``ambient[n]``; ``matrix`` maps sub-coordinates into ``ambient``."""

    sub: FiniteAbelianModule
    ambient: FiniteAbelianModule
    matrix: np.ndarray

    def include(self, m):
        return self.ambient.reduce(np.asarray(m, dtype=np.int64) @ self.matrix.T)


def act(M, g, m):
    return M.act(g, m)


def scalar_mul(M, n, m):
    return M.scalar_mul(n, m)


def torsion_submodule(M, n):
    """The n-torsion ``M[n]`` with its own invariant factors and inclusion.

    For a divisible workspace of rank r the answer is ``(Z/n)^r``, included
    into the workspace promoted to exponent ``lcm(D, n)``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    Q = M.group
    if isinstance(M, DivisibleWorkspace):
        ambient = M if M.D % n == 0 else M.with_exponent(_lcm([M.D, n]))
        r = M.rank if n > 1 else 0
        sub = FiniteAbelianModule(Q, (n,) * r, M.integer_action[:, :r, :r] if r else None)
        incl = np.eye(M.rank, r, dtype=np.int64) * (ambient.D // n)
        return TorsionInclusion(sub, ambient, incl)
    d = M.moduli
    g = np.asarray([gcd(n, int(x)) for x in d], dtype=np.int64)
    keep = np.flatnonzero(g > 1)
    incl = np.zeros((M.rank, len(keep)), dtype=np.int64)
    for col, i in enumerate(keep):
        incl[i, col] = d[i] // g[i]
    # action on M[n]: A' with incl @ A' = A @ incl, solved componentwise
    A = M.action
    sub_action = np.zeros((Q.order, len(keep), len(keep)), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            val = A[:, i, j] * (d[j] // g[j]) % d[i]
            step = d[i] // g[i]
            if (val % step).any():
                raise NotEquivariant("torsion is not preserved by the action")
            sub_action[:, a, b] = (val // step) % g[i]
    sub = FiniteAbelianModule(Q, tuple(int(x) for x in g[keep]), sub_action)
    return TorsionInclusion(sub, M, incl)


def divide(W, m, n):
    """Canonical preimage of ``m`` under multiplication by ``n``.

    Numerators are kept and the exponent is scaled to ``n * D``; returns
    ``(element, promoted_workspace)``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    return np.asarray(m, dtype=np.int64) % W.D, W.with_exponent(W.D * n)


def check_module_map(phi, M, M1):
    """Validate an integer matrix as an equivariant map ``M -> M1``."""
    phi = np.asarray(phi, dtype=np.int64).reshape(M1.rank, M.rank)
    d, d1 = M.moduli, M1.moduli
    if ((phi * d[None, :]) % d1[:, None]).any():
        raise NotEquivariant("map is not well defined on the factors")
    lhs = np.einsum("ij,gjk->gik", phi, M.action)
    rhs = np.einsum("gij,jk->gik", M1.action, phi)
    if ((lhs - rhs) % d1[None, :, None]).any():
        raise NotEquivariant("map does not commute with the action")
    return phi


def apply_map(phi, M1, m):
    return M1.reduce(np.asarray(m, dtype=np.int64) @ np.asarray(phi).T)


def factors_from_torsion_counts(size, killed_by):
    """Invariant factors of a finite abelian group of order ``size``.

    ``killed_by(k)`` must return the number of elements ``g`` with
    ``k g = 0``.  For each prime p the counts ``|G[p^j]|`` determine the
    p-primary partition.
    """
    exps = {}
    n, p = size, 2
    primes = []
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    for p in primes:
        full = 1
        while size % (full * p) == 0:
            full *= p
        parts, prev, j = [], 1, 1
        while prev < full:
            cnt = killed_by(p ** j)
            step, ratio = 0, cnt // prev
            while ratio > 1:
                ratio //= p
                step += 1
            parts.append(step)
            prev, j = cnt, j + 1
        # parts[j-1] = number of cyclic p-factors of order >= p^j
        lam = [sum(1 for s in parts if s > i) for i in range(parts[0])] if parts else []
        exps[p] = sorted(lam, reverse=True)
    length = max((len(v) for v in exps.values()), default=0)
    factors = []
    for i in range(length):
        f = 1
        for p, lam in exps.items():
            if i < len(lam):
                f *= p ** lam[i]
        factors.append(f)
    return tuple(reversed(factors))


def abelian_invariants(M, elements):
    """Invariant factors of the subgroup of M formed by ``elements``."""
    el = np.asarray(elements, dtype=np.int64).reshape(-1, M.rank)
    el = M.element(np.unique(M.index(el)))

    def killed_by(k):
        return int((M.index(k * el) == 0).sum())

    return factors_from_torsion_counts(len(el), killed_by)
