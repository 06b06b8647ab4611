"""Z/4 as a non-split extension of Z/2 by Z/2.

No subgroup of order 2 maps onto the quotient, so the best one can do is
a quasi-complement whose defect N ∩ F is all of N.
"""

from extlift import cohomology as coh
from extlift.fixtures import z4_over_z2
from extlift.oracle import minimal_complement
from extlift.quasisplit import quasi_complement

Q, M, c = z4_over_z2()
H = coh.h2(Q, M)
print("H^2(Z/2, Z/2) invariant factors:", H.invariant_factors)
print("class order of c:", coh.class_order(c))

res = quasi_complement(Q, M, c)
E = res.extension
print("carrier order:", E.order, " |F| =", res.F.order, " defect factors:", res.defect_factors)

F = minimal_complement(E, E.embedded_N)
print("oracle minimal quasi-complement order:", F.order)
