"""Finite groups given by multiplication tables.

Elements are dense indices ``0 .. order-1`` with the identity at index 0.
Anything exposing ``order``, a vectorised ``mul(a, b)`` and ``inv(a)`` can
be used where a group is expected (see ``extension.ExtensionGroup``), so
the subgroup helpers here also work on extension groups too large to
tabulate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exceptions import NotNormal

FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 10_000


class FiniteGroup:
    """A finite group stored as an ``order x order`` table of indices.

    The table is relabelled on construction so that the identity is
    element 0.  Associativity is checked exhaustively up to order 512 and
    on 10**4 seeded random triples above that.
    """

    def __init__(self, table, check=True):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries out of range")
        ident = np.flatnonzero((table == np.arange(n)).all(axis=1))
        if len(ident) != 1:
            raise ValueError("table has no unique left identity")
        e = int(ident[0])
        if e != 0:
            perm = np.arange(n)
            perm[[0, e]] = perm[[e, 0]]
            # perm is an involution, so it is its own inverse relabelling
            table = perm[table[np.ix_(perm, perm)]]
        self.table = table
        self.table.setflags(write=False)
        self.order = n
        if check:
            self._check()
        inv = np.argmax(table == 0, axis=1)
        self.inverses = inv
        self.inverses.setflags(write=False)

    def _check(self):
        t, n = self.table, self.order
        ar = np.arange(n)
        if not (t[:, 0] == ar).all():
            raise ValueError("identity is not a right identity")
        srt = np.sort(t, axis=1)
        if not (srt == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise ValueError("table is not a Latin square")
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            for x in range(n):
                # (x*y)*z vs x*(y*z) for all y, z
                lhs = t[t[x]]
                rhs = t[x][t]
                if not (lhs == rhs).all():
                    raise ValueError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            x, y, z = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
            if not (t[t[x, y], z] == t[x, t[y, z]]).all():
                raise ValueError("table is not associative")

    identity = 0

    def mul(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self.inverses[a]

    def element_order(self, g):
        k, x = 1, int(g)
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element indices."""

    parent: object
    elements: np.ndarray = field(repr=False)

    def __post_init__(self):
        el = np.unique(np.asarray(self.elements, dtype=np.int64))
        el.setflags(write=False)
        object.__setattr__(self, "elements", el)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        i = np.searchsorted(self.elements, g)
        return i < len(self.elements) and self.elements[i] == g

    def __iter__(self):
        return iter(self.elements.tolist())

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and np.array_equal(self.elements, other.elements)
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements.tobytes()))

    def contains_all(self, elements):
        elements = np.asarray(elements, dtype=np.int64)
        idx = np.searchsorted(self.elements, elements)
        idx = np.minimum(idx, len(self.elements) - 1)
        return bool((self.elements[idx] == elements).all())

    def is_closed(self):
        """Check closure under the parent's multiplication and inversion."""
        el = self.elements
        if 0 not in self:
            return False
        if not self.contains_all(self.parent.inv(el)):
            return False
        chunk = max(1, 2_000_000 // max(1, len(el)))
        for i in range(0, len(el), chunk):
            prods = self.parent.mul(el[i:i + chunk, None], el[None, :])
            if not self.contains_all(prods.ravel()):
                return False
        return True


@dataclass(frozen=True)
class QuotientData:
    kernel: Subgroup
    quotient: FiniteGroup
    projection: np.ndarray
    section: np.ndarray


def make_cyclic(n):
    if n < 1:
        raise ValueError("n must be positive")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, check=False)


def direct_product(G, H):
    """Componentwise product; element (g, h) has index ``g * |H| + h``."""
    g = np.arange(G.order).repeat(H.order)
    h = np.tile(np.arange(H.order), G.order)
    table = G.table[g[:, None], g[None, :]] * H.order + H.table[h[:, None], h[None, :]]
    return FiniteGroup(table, check=False)


def from_permutations(generators):
    """Group generated by permutations (tuples of images of 0..d-1).

    Elements are numbered in BFS order from the identity permutation, so
    the result is deterministic.
    """
    generators = [tuple(int(i) for i in g) for g in generators]
    d = len(generators[0]) if generators else 1
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = tuple(p[i] for i in g)
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            # composition: apply q first, then p
            table[i, j] = index[tuple(p[k] for k in q)]
    return FiniteGroup(table, check=False)


def dihedral(n):
    """Symmetries of the regular n-gon, order 2n.

    Element ``i + n*j`` is ``r**i * s**j``; the rotations are ``0..n-1``.
    """
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    for a, b in itertools.product(range(2 * n), repeat=2):
        i, j = a % n, a // n
        k, l = b % n, b // n
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
        rot = (i + (k if j == 0 else -k)) % n
        table[a, b] = rot + n * ((j + l) % 2)
    return FiniteGroup(table, check=False)


def symmetric(n):
    if n == 1:
        return make_cyclic(1)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return from_permutations(gens)


def quaternion():
    """Quaternion group of order 8 as permutations of {±1, ±i, ±j, ±k}."""
    # points: 0=1, 1=i, 2=j, 3=k, 4=-1, 5=-i, 6=-j, 7=-k; left multiplication
    li = (1, 4, 3, 6, 5, 0, 7, 2)
    lj = (2, 7, 4, 1, 6, 3, 0, 5)
    return from_permutations([li, lj])


def whole(G):
    return Subgroup(G, np.arange(G.order))


def trivial_subgroup(G):
    return Subgroup(G, np.zeros(1, dtype=np.int64))


def subgroup_closure(G, seed):
    """Smallest subgroup of ``G`` containing ``seed``."""
    gens = np.unique(np.asarray(list(seed), dtype=np.int64))
    gens = gens[gens != 0]
    members = {0}
    frontier = np.zeros(1, dtype=np.int64)
    while len(frontier) and len(gens):
        prods = np.unique(G.mul(frontier[:, None], gens[None, :]).ravel())
        new = [p for p in prods.tolist() if p not in members]
        members.update(new)
        frontier = np.asarray(new, dtype=np.int64)
    return Subgroup(G, np.fromiter(members, dtype=np.int64, count=len(members)))


def intersection(S, T):
    return Subgroup(S.parent, np.intersect1d(S.elements, T.elements))


def product_set(G, S, T):
    """The set ``{s t : s in S, t in T}`` as a sorted index array."""
    return np.unique(G.mul(S.elements[:, None], T.elements[None, :]).ravel())


def is_normal(G, S):
    g = np.arange(G.order)
    conj = G.mul(G.mul(g[:, None], S.elements[None, :]), G.inv(g)[:, None])
    return S.contains_all(conj.ravel())


def quotient(G, N):
    """Quotient by a normal subgroup; cosets are ordered by least element."""
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    projection = np.full(G.order, -1, dtype=np.int64)
    section = []
    for g in range(G.order):
        if projection[g] < 0:
            projection[G.mul(g, N.elements)] = len(section)
            section.append(g)
    section = np.asarray(section, dtype=np.int64)
    table = projection[G.mul(section[:, None], section[None, :])]
    return QuotientData(N, FiniteGroup(table, check=False), projection, section)


def restrict(S):
    """Return ``S`` as a standalone FiniteGroup plus its embedding array.

    Element ``i`` of the returned group is ``embedding[i]`` in the parent.
    """
    el = S.elements
    lookup = {g: i for i, g in enumerate(el.tolist())}
    prods = S.parent.mul(el[:, None], el[None, :])
    table = np.vectorize(lookup.__getitem__, otypes=[np.int64])(prods)
    return FiniteGroup(table, check=False), el


def preimage(qd, S):
    """Preimage in the parent group of a subgroup of the quotient."""
    mask = np.isin(qd.projection, S.elements)
    return Subgroup(qd.kernel.parent, np.flatnonzero(mask))
