"""The F_p construction: H is spanned by all translates x.c(y, z).

F = H s(Q) is closed because the cocycle only ever produces elements of
H, and its defect is H itself.
"""

import numpy as np

from extlift import cohomology as coh
from extlift.exceptions import NotACocycle
from extlift.fingroup import make_cyclic
from extlift.qmodule import FpVectorModule
from extlift.quasisplit import vector_complement

Z2 = make_cyclic(2)
V = FpVectorModule(Z2, 2, 2, {1: [[0, 1], [1, 0]]})
c = coh.Cochain.from_dict(V, 2, {(1, 1): [1, 1]})
res = vector_complement(Z2, V, c)
print("H basis:", res.details["H_basis"].tolist(), " |F| =", res.F.order)

try:
    vector_complement(Z2, V, coh.Cochain.from_dict(V, 2, {(1, 1): [1, 0]}))
except NotACocycle as exc:
    print("c(g, g) = (1, 0) is rejected:", exc)

V3 = FpVectorModule(make_cyclic(3), 3, 2, {1: [[0, 2], [1, 2]]})
c = coh.random_cocycle(V3, np.random.default_rng(1))
res = vector_complement(V3.group, V3, c)
print("Z/3 on F_3^2:", "dim H =", len(res.details["H_basis"]), " |F| =", res.F.order)
