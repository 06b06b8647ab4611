"""Composing quasi-complements through an intermediate normal subgroup.

In D4 = Z/4 ⋊ Z/2 take N' the centre.  The outer problem lives in
D4/N' ≅ Z/2 x Z/2, the inner one in the preimage of its answer, and the
defect orders multiply.
"""

import numpy as np

from extlift import cohomology as coh
from extlift.extension import build_extension
from extlift.fingroup import Subgroup, make_cyclic
from extlift.qmodule import FiniteAbelianModule
from extlift.quasisplit import compose

Z2 = make_cyclic(2)
M = FiniteAbelianModule(Z2, (4,), {1: [[-1]]})
E = build_extension(Z2, M, coh.Cochain.zero(M, 2))
centre = Subgroup(E, [0, int(E.encode(np.array([2]), 0))])
res = compose(E, centre)
d = res.details
print("|E| =", E.order, " |F'| =", d["outer"].order, " |G'| =", d["intermediate"].order, " |F| =", res.F.order)
print("defect:", res.defect.order, "=", d["inner_defect"].order, "x", d["outer_defect"].order)
