"""Brute-force ground truth on tiny instances.

Nothing here uses Smith normal forms or the constructive code paths:
subgroups come from closure enumeration, quasi-complements from
exhaustive search, and H^2 from listing every normalised cochain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import CohomologyGroup
from .exceptions import TooLarge
from .fingroup import Subgroup, product_set, quotient, subgroup_closure
from .qmodule import factors_from_torsion_counts

DEFAULT_BOUND = 128
H2_LIMIT = 10 ** 6


@dataclass
class SubgroupCatalog:
    parent: object
    subgroups: list

    def __len__(self):
        return len(self.subgroups)

    def orders(self):
        return [S.order for S in self.subgroups]


def _sort_key(S):
    return (S.order, tuple(S.elements.tolist()))


def enumerate_subgroups(G, bound=DEFAULT_BOUND):
    """Every subgroup of G, sorted by order then element list.

    Starts from the cyclic subgroups and repeatedly adjoins one element
    (one per coset of the current subgroup) until nothing new appears.
    """
    if G.order > bound:
        raise TooLarge(f"group of order {G.order} exceeds bound {bound}")
    seen = {}
    queue = []
    for g in range(G.order):
        S = subgroup_closure(G, [g])
        key = S.elements.tobytes()
        if key not in seen:
            seen[key] = (S, [g] if g else [])
            queue.append(key)
    while queue:
        key = queue.pop()
        S, gens = seen[key]
        covered = np.zeros(G.order, dtype=bool)
        covered[S.elements] = True
        for g in range(G.order):
            if covered[g]:
                continue
            covered[G.mul(S.elements, g)] = True
            T = subgroup_closure(G, gens + [g])
            tkey = T.elements.tobytes()
            if tkey not in seen:
                seen[tkey] = (T, gens + [g])
                queue.append(tkey)
    subs = sorted((S for S, _ in seen.values()), key=_sort_key)
    return SubgroupCatalog(G, subs)


def minimal_complement(G, N, bound=DEFAULT_BOUND):
    """A smallest subgroup F with ``G = N F``; ties broken lexicographically.

    Any such F is generated by lifts of any fixed generating set of G/N
    (the lifts it contains already generate a subgroup surjecting onto
    G/N), so it suffices to close every tuple of lifts.
    """
    if hasattr(G, "as_finite_group"):
        G = G.as_finite_group()
        N = Subgroup(G, N.elements)
    if G.order > bound:
        raise TooLarge(f"group of order {G.order} exceeds bound {bound}")
    qd = quotient(G, N)
    Qbar = qd.quotient
    gens = []
    span = subgroup_closure(Qbar, [])
    for q in range(Qbar.order):
        if span.order == Qbar.order:
            break
        if q not in span:
            gens.append(q)
            span = subgroup_closure(Qbar, gens)
    lifts = [np.flatnonzero(qd.projection == q).tolist() for q in gens]
    best = None
    for choice in itertools.product(*lifts):
        F = subgroup_closure(G, choice)
        if best is None or _sort_key(F) < _sort_key(best):
            best = F
    if best is None:
        best = subgroup_closure(G, [])
    if len(product_set(G, N, best)) != G.order:
        raise AssertionError("oracle complement does not cover G")
    return best


def minimal_complement_by_catalog(G, N, bound=DEFAULT_BOUND):
    """Same answer as :func:`minimal_complement`, by scanning all subgroups."""
    for S in enumerate_subgroups(G, bound).subgroups:
        if len(product_set(G, N, S)) == G.order:
            return S
    raise AssertionError("G itself should always qualify")


def _d2_bruteforce(vals, A, T, mod):
    """Explicit triple loop; ``vals`` has shape (batch, n, n, k)."""
    n = T.shape[0]
    bad = np.zeros(vals.shape[0], dtype=bool)
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                term = (
                    vals[:, y, z] @ A[x].T
                    - vals[:, T[x, y], z]
                    + vals[:, x, T[y, z]]
                    - vals[:, x, y]
                )
                bad |= (term % mod).any(axis=1)
    return ~bad


def h2_bruteforce(Q, M, limit=H2_LIMIT):
    """``H^2(Q, M)`` by listing all normalised 2-cochains.

    Returns a CohomologyGroup whose ``matrices`` dict is empty and whose
    ``stats`` record how many cochains, cocycles and coboundaries were
    seen.
    """
    n, k = Q.order, M.rank
    size = M.order
    slots = (n - 1) ** 2
    total = size ** slots
    if total > limit:
        raise TooLarge(f"{total} cochains exceed the limit {limit}")
    if slots == 0 or size == 1:
        return CohomologyGroup((), [], {}, {"cochains": 1, "cocycles": 1, "coboundaries": 1})
    elements = M.elements()
    A, T, mod = M.action, Q.table, M.moduli

    radix = size ** np.arange(slots, dtype=np.int64)

    def to_values(codes, nslots):
        digits = (codes[:, None] // (size ** np.arange(nslots, dtype=np.int64))) % size
        return elements[digits]

    # cocycles
    cocycle_codes = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        inner = to_values(codes, slots).reshape(-1, n - 1, n - 1, k)
        vals = np.zeros((len(codes), n, n, k), dtype=np.int64)
        vals[:, 1:, 1:] = inner
        cocycle_codes.append(codes[_d2_bruteforce(vals, A, T, mod)])
    Z = np.concatenate(cocycle_codes)

    # coboundaries of every normalised 1-cochain
    n1 = size ** (n - 1)
    fs = np.zeros((n1, n, k), dtype=np.int64)
    fs[:, 1:] = to_values(np.arange(n1, dtype=np.int64), n - 1).reshape(n1, n - 1, k)
    d1 = np.zeros((n1, n, n, k), dtype=np.int64)
    for x in range(1, n):
        for y in range(1, n):
            d1[:, x, y] = (fs[:, y] @ A[x].T - fs[:, T[x, y]] + fs[:, x]) % mod
    B = np.unique(_encode(M, d1[:, 1:, 1:].reshape(n1, slots, k), radix))

    def killed_by(m):
        vals = to_values(Z, slots).reshape(len(Z), slots, k) * m
        return int(np.isin(_encode(M, vals, radix), B).sum() // len(B))

    order = len(Z) // len(B)
    factors = factors_from_torsion_counts(order, killed_by)
    stats = {"cochains": total, "cocycles": int(len(Z)), "coboundaries": int(len(B))}
    return CohomologyGroup(factors, [], {}, stats)


def _encode(M, vals, radix):
    return (M.index(vals) * radix).sum(axis=-1)
