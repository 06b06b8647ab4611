"""Averaging a section of an equivariant lattice surjection.

Z/2 swaps the coordinates of Z^2 and rho sums them.  Any integer section
must be averaged over the group, which costs a denominator d = 2; the
lattice spanned by d times the section is stable and maps onto 2Z.
"""

import numpy as np

from extlift.lattice import stable_sublattice, verify_splitting
from extlift.samples import group_zoo, random_surjection, swap_surjection

rho = swap_surjection()
res = stable_sublattice(rho)
print("d =", res.denominator, " Lambda =", res.lattice.T.tolist(), " index =", res.index)
print("checks:", verify_splitting(res, rho))

rng = np.random.default_rng(3)
W = group_zoo(8)["D4"]
for _ in range(3):
    rho = random_surjection(W, rng)
    res = stable_sublattice(rho)
    print(f"D4, rank {rho.source.rank} -> {rho.target.rank}: d = {res.denominator}, "
          f"index {res.index}, quotient {res.quotient_invariants}")
