"""Finite quasi-complements ``F`` with ``E = N F`` for extensions of a
finite group by a commutative module.

* :func:`divisible_complement` -- torsion coefficients of a divisible
  group: kill the class by its order n, divide the witness by n and read
  off ``F`` as an extension of Q by the n-torsion.
* :func:`vector_complement` -- F_p-vector coefficients: ``F = H s(Q)``
  where H is spanned by the translates ``x.c(x', x'')``.
* :func:`compose` -- glue solutions along ``N' ⊂ N`` and track how the
  defect groups fit together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cohomology as coh
from .exceptions import NotNormal, SolverFailed
from .extension import ExtensionGroup, defect_group, is_quasi_complement, module_of_defect
from .fingroup import (
    Subgroup,
    intersection,
    is_normal,
    preimage,
    product_set,
    quotient,
    restrict,
    whole,
)
from .qmodule import DivisibleWorkspace, FpVectorModule, abelian_invariants, divide, torsion_submodule


@dataclass
class ComplementResult:
    F: Subgroup
    defect: Subgroup
    extension: object
    class_order_used: int | None = None
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def defect_factors(self):
        E = self.extension
        if isinstance(E, ExtensionGroup):
            return abelian_invariants(E.M, module_of_defect(E, self.defect))
        return self.details.get("defect_factors")

    def check(self):
        """Re-verify the ComplementResult invariants."""
        E, F, D = self.extension, self.F, self.defect
        nq = E.nq if isinstance(E, ExtensionGroup) else self.details["quotient_order"]
        return {
            "closed": F.is_closed(),
            "quasi_complement": is_quasi_complement(E, F),
            "order": F.order == D.order * nq,
            "defect": np.array_equal(D.elements, intersection(E.embedded_N, F).elements),
        }

    def to_json(self):
        from .io import complement_to_doc

        return complement_to_doc(self)


def _section_subgroup(E, fibre, shift=None):
    """``{(m - shift(x), x) : m in fibre, x in Q}`` as a subgroup of E.

    With the multiplication of :class:`ExtensionGroup`, the set
    ``{(-a(x), x)}`` is closed exactly when ``c - d1 a`` vanishes, so a
    shift by ``-a`` turns ``c`` into ``c - d1 a`` on the fibre.
    """
    nq = E.nq
    x = np.arange(nq)
    m = np.asarray(fibre, dtype=np.int64)[:, None, :]
    if shift is not None:
        m = m - shift.values[None, :, :]
    m = np.broadcast_to(m, (len(fibre), nq, E.M.rank))
    idx = E.encode(m, np.broadcast_to(x, (len(fibre), nq)))
    return Subgroup(E, idx.ravel())


def divisible_complement(Q, W, c, witness="solve", verify=True):
    """Quasi-complement for a cocycle with values in a divisible workspace.

    With ``n`` the class order of ``c`` and ``n c = d1 b``, the cochain
    ``a = b / n`` lives at exponent ``n D`` and ``c - d1 a`` takes values in
    the n-torsion ``W[n] = (Z/n)^r``.  The result ``F = {(m - a(x), x)}``
    for ``m`` in ``W[n]`` sits inside the extension rebuilt at exponent
    ``n D``; its defect is ``W[n]``.

    ``witness="killing"`` uses ``b(x) = sum_y c(x, y)`` when ``n = |Q|``.
    """
    if not isinstance(W, DivisibleWorkspace):
        raise TypeError("divisible_complement needs a DivisibleWorkspace")
    coh._require_cocycle(c)
    n = coh.class_order(c)
    if witness == "killing" and n == Q.order:
        b = coh.killing_cochain(c)
    else:
        b = coh.solve_coboundary(n * c)
    a_vals, W2 = divide(W, b.values, n)
    a = coh.Cochain(W2, 1, a_vals)
    c2 = coh.Cochain(W2, 2, W.promote(c.values, n))
    E = ExtensionGroup(Q, W2, c2)
    reduced = c2 - coh.coboundary(a)
    if not (n * reduced).is_zero():
        raise AssertionError("reduced cocycle is not n-torsion")
    tors = torsion_submodule(W2, n)
    fibre = tors.include(tors.sub.elements())
    F = _section_subgroup(E, fibre, a)
    D = defect_group(E, F)
    res = ComplementResult(F, D, E, n, {"b": b, "a": a, "reduced": reduced})
    if verify:
        _verify(res)
    return res


def vector_complement(Q, V, c, verify=True):
    """``F = H s(Q)`` with H the F_p-span of all ``x.c(x', x'')``."""
    if not isinstance(V, FpVectorModule):
        raise TypeError("vector_complement needs an FpVectorModule")
    coh._require_cocycle(c)
    values = V.act_all(c.values).reshape(-1, V.rank)
    basis = V.span(values)
    images = V.act_all(basis).reshape(-1, V.rank)
    if len(V.span(np.concatenate([basis, images]))) != len(basis):
        raise AssertionError("span of cocycle translates is not Q-stable")
    E = ExtensionGroup(Q, V, c)
    F = _section_subgroup(E, V.span_elements(basis))
    D = defect_group(E, F)
    res = ComplementResult(F, D, E, None, {}, {"H_basis": basis})
    if verify:
        _verify(res)
    return res


def _additive_span(M, vectors):
    members = {0}
    gens = np.unique(M.index(np.asarray(vectors).reshape(-1, M.rank)))
    gens = M.element(gens[gens != 0])
    frontier = M.zero()[None, :]
    out = [M.zero()]
    while len(frontier) and len(gens):
        new = M.reduce(frontier[:, None, :] + gens[None, :, :]).reshape(-1, M.rank)
        idx = M.index(new)
        _, first = np.unique(idx, return_index=True)
        fresh = [i for i in first if int(idx[i]) not in members]
        members.update(int(idx[i]) for i in fresh)
        frontier = new[fresh]
        out.extend(frontier)
    return np.asarray(out, dtype=np.int64).reshape(-1, M.rank)


def span_complement(Q, M, c, verify=True):
    """``F = H s(Q)`` with H the subgroup generated by all ``x.c(x', x'')``.

    Works for any finite module (H is Q-stable and contains every value of
    c, so ``H x Q`` is closed under the twisted product).
    """
    coh._require_cocycle(c)
    H = _additive_span(M, M.act_all(c.values))
    E = ExtensionGroup(Q, M, c)
    F = _section_subgroup(E, H)
    res = ComplementResult(F, defect_group(E, F), E)
    if verify:
        _verify(res)
    return res


def split_complement(Q, M, c, verify=True):
    """A genuine complement ``{(-b(x), x)}`` when ``c = d1 b`` is split."""
    coh._require_cocycle(c)
    b = coh.solve_coboundary(c)
    if b is None:
        raise SolverFailed("extension is not split")
    E = ExtensionGroup(Q, M, c)
    F = _section_subgroup(E, M.zero()[None, :], b)
    res = ComplementResult(F, defect_group(E, F), E, 1, {"b": b, "a": b})
    if verify:
        _verify(res)
    return res


def quasi_complement(Q, M, c):
    """Dispatch by coefficient model; split classes get a true complement."""
    if isinstance(M, DivisibleWorkspace):
        return divisible_complement(Q, M, c)
    if coh.class_order(c) == 1:
        return split_complement(Q, M, c)
    if isinstance(M, FpVectorModule):
        return vector_complement(Q, M, c)
    return span_complement(Q, M, c)


def _verify(res):
    failed = [k for k, ok in res.check().items() if not ok]
    if failed:
        raise AssertionError(f"complement checks failed: {failed}")


# --- composition along N' ⊂ N -------------------------------------------

def default_solver(G, N):
    from .oracle import minimal_complement

    return minimal_complement(G, N)


def whole_group_solver(G, N):
    return whole(G)


def compose(E, N_prime, inner_solver=None, outer_solver=None):
    """Quasi-complement of N in E assembled from two smaller problems.

    The outer solver handles ``N/N'`` inside ``E/N'`` and yields ``F'``;
    with ``G'`` the preimage of ``F'``, the inner solver handles ``N'``
    inside ``G'`` and yields ``F``.  Solvers take ``(group, normal
    subgroup)`` and return a subgroup with ``group = N F``.
    """
    inner_solver = inner_solver or default_solver
    outer_solver = outer_solver or default_solver
    G = E.as_finite_group()
    N = Subgroup(G, E.embedded_N.elements)
    Np = Subgroup(G, N_prime.elements)
    if not N.contains_all(Np.elements):
        raise ValueError("N' is not contained in N")
    if not is_normal(G, Np):
        raise NotNormal("N' is not normal in E")
    qd = quotient(G, Np)
    Gbar = qd.quotient
    Nbar = Subgroup(Gbar, np.unique(qd.projection[N.elements]))
    Fp = outer_solver(Gbar, Nbar)
    if len(product_set(Gbar, Nbar, Fp)) != Gbar.order:
        raise SolverFailed("outer solver did not return a quasi-complement")
    Gp = preimage(qd, Fp)
    Gp_group, emb = restrict(Gp)
    Np_local = Subgroup(Gp_group, np.searchsorted(emb, Np.elements))
    F_local = inner_solver(Gp_group, Np_local)
    if len(product_set(Gp_group, Np_local, F_local)) != Gp_group.order:
        raise SolverFailed("inner solver did not return a quasi-complement")
    F = Subgroup(E, emb[F_local.elements])
    if not is_quasi_complement(E, F):
        raise SolverFailed("composed subgroup is not a quasi-complement")
    D = defect_group(E, F)
    inner_defect = intersection(Subgroup(E, Np.elements), F)
    outer_defect = intersection(Nbar, Fp)
    if D.order != inner_defect.order * outer_defect.order:
        raise AssertionError("defect orders do not multiply")
    details = {
        "outer": Fp,
        "intermediate": Subgroup(E, Gp.elements),
        "inner_defect": inner_defect,
        "outer_defect": outer_defect,
    }
    return ComplementResult(F, D, E, None, {}, details)


def torsion_bound_check(Q, M):
    """Check that every invariant factor of ``H^2(Q, M)`` divides ``|Q|``."""
    H = coh.h2(Q, M)
    orders = [coh.class_order(r) for r in H.representatives]
    return {
        "group_order": Q.order,
        "factors": list(H.invariant_factors),
        "bound_ok": all(Q.order % f == 0 for f in H.invariant_factors),
        "representative_orders_ok": orders == list(H.invariant_factors),
        "max_class_order": max(H.invariant_factors, default=1),
    }
