"""Named small instances used by tests, demos and the golden regression file."""

from __future__ import annotations

from . import cohomology as coh
from .extension import defect_group
from .fingroup import Subgroup, make_cyclic
from .oracle import minimal_complement
from .qmodule import FiniteAbelianModule
from .quasisplit import quasi_complement


def z4_over_z2():
    """Z/4 as the non-split extension of Z/2 by trivial Z/2: c(g, g) = 1."""
    Q = make_cyclic(2)
    M = FiniteAbelianModule(Q, (2,))
    return Q, M, coh.Cochain.from_dict(M, 2, {(1, 1): [1]})


def z4_over_z2_report():
    Q, M, c = z4_over_z2()
    H = coh.h2(Q, M)
    res = quasi_complement(Q, M, c)
    E = res.extension
    G = E.as_finite_group()
    F = minimal_complement(G, Subgroup(G, E.embedded_N.elements))
    return {
        "instance": "Z/4 over Z/2",
        "h2_invariant_factors": list(H.invariant_factors),
        "class_order": coh.class_order(c),
        "carrier_order": int(E.order),
        "constructive": {
            "F_elements": [int(x) for x in res.F.elements],
            "defect_order": int(res.defect.order),
            "defect_factors": [int(f) for f in res.defect_factors],
        },
        "oracle": {
            "minimal_complement_order": int(F.order),
            "minimal_complement_elements": [int(x) for x in F.elements],
            "minimal_defect_order": int(defect_group(E, Subgroup(E, F.elements)).order),
        },
    }
