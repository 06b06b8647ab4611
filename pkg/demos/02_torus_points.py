"""Finite quasi-complements inside a torus-point model.

The workspace stands for the D-torsion of (Q/Z)^r.  For a cocycle of class
order n the construction divides a coboundary witness by n, and the
resulting F meets N in exactly (Z/n)^r.
"""

import numpy as np

from extlift import cohomology as coh
from extlift.fingroup import make_cyclic
from extlift.qmodule import DivisibleWorkspace
from extlift.quasisplit import divisible_complement
from extlift.samples import group_zoo, random_workspace

Z2 = make_cyclic(2)
W = DivisibleWorkspace(Z2, 1, 2)
c = coh.Cochain.from_dict(W, 2, {(1, 1): [1]})   # c(g, g) = 1/2
res = divisible_complement(Z2, W, c)
print(f"Z/2 on (1/2)Z/Z: n = {res.class_order_used}, |F| = {res.F.order}, defect {res.defect_factors}")

rng = np.random.default_rng(7)
for name in ("Z3", "S3", "D4", "Q8"):
    Q = group_zoo(8)[name]
    W = random_workspace(Q, 2, 4, rng)
    c = coh.random_cocycle(W, rng)
    res = divisible_complement(Q, W, c)
    print(f"{name:3} rank 2: n = {res.class_order_used}, |F| = {res.F.order}, defect {res.defect_factors}")
