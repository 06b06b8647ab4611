"""Extension groups ``1 -> M -> E -> Q -> 1`` built from 2-cocycles.

An element ``(m, x)`` of the carrier ``M x Q`` has index
``index(m) * |Q| + x`` and the product is::

    (m, x)(m', x') = (m + x.m' + c(x, x'), x x')

so the canonical section ``s(x) = (0, x)`` satisfies
``s(x) s(x') = c(x, x') s(x x')``.  Multiplication is evaluated from the
formula (vectorised), so extensions too large to tabulate still support
subgroup computations; :meth:`ExtensionGroup.as_finite_group` tabulates
small ones.
"""

from __future__ import annotations

import numpy as np

from . import cohomology as coh
from .exceptions import NotACocycle
from .fingroup import FiniteGroup, Subgroup, product_set
from .qmodule import apply_map, check_module_map

TABULATE_LIMIT = 4096


class ExtensionGroup:
    def __init__(self, Q, M, c):
        if c.module is not M or c.degree != 2:
            raise ValueError("cocycle does not live over this module")
        if not c.is_normalized():
            raise ValueError("cocycle must be normalised")
        if not coh.is_cocycle(c):
            raise NotACocycle("multiplication would not be associative")
        self.Q = Q
        self.M = M
        self.c = c
        self.nq = Q.order
        self.order = M.order * Q.order
        self._finite = None

    identity = 0

    def decode(self, a):
        a = np.asarray(a, dtype=np.int64)
        return self.M.element(a // self.nq), a % self.nq

    def encode(self, m, x):
        return self.M.index(m) * self.nq + np.asarray(x, dtype=np.int64)

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        m, x = self.decode(a)
        m2, x2 = self.decode(b)
        A = self.M.action[x]
        twisted = np.einsum("...ij,...j->...i", A, m2)
        out = m + twisted + self.c.values[x, x2]
        return self.encode(out, self.Q.table[x, x2])

    def inv(self, a):
        m, x = self.decode(a)
        xi = self.Q.inverses[x]
        A = self.M.action[xi]
        out = -np.einsum("...ij,...j->...i", A, m) - self.c.values[xi, x]
        return self.encode(out, xi)

    def projection(self, a):
        return np.asarray(a, dtype=np.int64) % self.nq

    def section(self, x):
        return np.asarray(x, dtype=np.int64)

    @property
    def embedded_N(self):
        return Subgroup(self, np.arange(self.M.order, dtype=np.int64) * self.nq)

    def as_finite_group(self):
        """The carrier as an explicit table (identity stays at index 0)."""
        if self._finite is None:
            if self.order > TABULATE_LIMIT:
                raise ValueError("extension too large to tabulate")
            ar = np.arange(self.order)
            self._finite = FiniteGroup(self.mul(ar[:, None], ar[None, :]), check=False)
        return self._finite

    def __repr__(self):
        return f"ExtensionGroup(|M|={self.M.order}, |Q|={self.nq})"


def build_extension(Q, M, c):
    return ExtensionGroup(Q, M, c)


def equivalence_map(c, a):
    """Isomorphism ``E(c - d1 a) -> E(c)``, ``(m, x) -> (m - a(x), x)``.

    Returns ``(source, target, mapping)`` where ``mapping`` is an index
    array on the source carrier.
    """
    target = ExtensionGroup(c.module.group, c.module, c)
    source = ExtensionGroup(c.module.group, c.module, c - coh.coboundary(a))
    ar = np.arange(source.order)
    m, x = source.decode(ar)
    mapping = target.encode(m - a.values[x], x)
    return source, target, mapping


def is_homomorphism(source, target, mapping, limit=None):
    """Check ``mapping`` on all pairs (or on ``limit`` seeded random pairs)."""
    n = source.order
    if limit is None or n * n <= limit:
        ar = np.arange(n)
        a, b = ar[:, None], ar[None, :]
    else:
        rng = np.random.default_rng(0)
        a, b = rng.integers(0, n, size=(2, limit))
    return bool((mapping[source.mul(a, b)] == target.mul(mapping[a], mapping[b])).all())


def pushout(phi, c, M1):
    """Push a cocycle forward along an equivariant map ``phi: M -> M1``."""
    phi = check_module_map(phi, c.module, M1)
    coh._require_cocycle(c)
    return coh.Cochain(M1, 2, apply_map(phi, M1, c.values))


def pullback_subgroup(E, phi, E1, F1):
    """``{(m, x) in E : (phi(m), x) in F1}`` for ``F1`` in ``E1 = E pushed along phi``."""
    phi = check_module_map(phi, E.M, E1.M)
    ar = np.arange(E.order)
    m, x = E.decode(ar)
    image = E1.encode(apply_map(phi, E1.M, m), x)
    mask = np.isin(image, F1.elements)
    F = Subgroup(E, ar[mask])
    if not F.is_closed():
        raise AssertionError("pullback is not a subgroup")
    return F


def is_quasi_complement(E, F):
    """``E = N F``, tested as: the projection of F covers Q."""
    return len(np.unique(E.projection(F.elements))) == E.nq


def product_covers(E, F):
    """``E = N F`` tested by forming the product set explicitly."""
    return len(product_set(E, E.embedded_N, F)) == E.order


def defect_group(E, F):
    """``N ∩ F``, with the order formula ``|N F| = |N| |F| / |N ∩ F|`` checked."""
    D = Subgroup(E, F.elements[E.projection(F.elements) == 0])
    covered = len(np.unique(E.projection(F.elements)))
    if covered * D.order != F.order:
        raise AssertionError("order formula for N F failed")
    return D


def module_of_defect(E, D):
    """Module elements ``m`` of the defect ``{(m, e)}``."""
    m, _ = E.decode(D.elements)
    return m
