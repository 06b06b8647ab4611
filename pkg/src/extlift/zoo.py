"""Sweep small extensions and cross-check constructive results against the oracle.

For each group Q in the zoo and each module M under the caps, every class
of ``H^2(Q, M)`` is visited.  For each class the sweep records its order,
whether it splits, the defect order of the constructive quasi-complement
and the defect order of the oracle's minimal one.  Any disagreement raises
:class:`OracleMismatch`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import gcd

import numpy as np

from . import cohomology as coh
from .exceptions import OracleMismatch, TooLarge
from .extension import defect_group
from .fingroup import Subgroup
from .oracle import H2_LIMIT, h2_bruteforce, minimal_complement
from .quasisplit import quasi_complement
from .samples import all_small_modules, group_zoo, is_trivial_action

DEFAULT_CAPS = {"max_q": 4, "max_m": 4}
ORACLE_GROUP_BOUND = 128


def normalise_caps(caps):
    out = dict(DEFAULT_CAPS)
    out.update(caps or {})
    for key in ("max_q", "max_m"):
        if isinstance(out[key], bool) or not isinstance(out[key], int) or out[key] < 1:
            raise ValueError(f"cap {key} must be a positive integer")
    if out["max_q"] > 8 or out["max_m"] > 8:
        raise ValueError("caps beyond |Q| <= 8, |M| <= 8 exceed the oracle bounds")
    return out


def _classes(H):
    """Every element of H^2 as a combination of the representatives."""
    for coeffs in itertools.product(*(range(f) for f in H.invariant_factors)):
        yield coeffs


def _instances(caps):
    for name, Q in group_zoo(caps["max_q"]).items():
        for M in all_small_modules(Q, caps["max_m"]):
            if caps.get("coprime") and gcd(Q.order, M.order) != 1:
                continue
            yield name, Q, M


def sweep(caps=None, seed=0):
    caps = normalise_caps(caps)
    instances = list(_instances(caps))
    if caps.get("samples") is not None and caps["samples"] < len(instances):
        rng = np.random.default_rng(seed)
        keep = sorted(rng.choice(len(instances), size=caps["samples"], replace=False).tolist())
        instances = [instances[i] for i in keep]

    rows = []
    for name, Q, M in instances:
        H = coh.h2(Q, M)
        oracle_h2 = None
        if M.order ** ((Q.order - 1) ** 2) <= H2_LIMIT:
            oracle_h2 = list(h2_bruteforce(Q, M).invariant_factors)
            if oracle_h2 != list(H.invariant_factors):
                raise OracleMismatch(f"H^2 mismatch for {name}, {M.factors}: {H.invariant_factors} vs {oracle_h2}")
        classes = []
        for coeffs in _classes(H):
            c = coh.Cochain.zero(M, 2)
            for a, r in zip(coeffs, H.representatives):
                c = c + a * r
            n = coh.class_order(c)
            if Q.order % n:
                raise OracleMismatch(f"class order {n} does not divide |Q| = {Q.order}")
            res = quasi_complement(Q, M, c)
            entry = {
                "coefficients": list(coeffs),
                "class_order": n,
                "split": n == 1,
                "constructive_defect": int(res.defect.order),
                "oracle_defect": None,
            }
            E = res.extension
            if E.order <= ORACLE_GROUP_BOUND:
                G = E.as_finite_group()
                F = minimal_complement(G, Subgroup(G, E.embedded_N.elements))
                D = defect_group(E, Subgroup(E, F.elements))
                entry["oracle_defect"] = int(D.order)
                if D.order > res.defect.order:
                    raise OracleMismatch("oracle found a larger minimal defect than the construction")
                if (n == 1) != (D.order == 1):
                    raise OracleMismatch("split flag disagrees with the oracle")
            classes.append(entry)
        rows.append({
            "group": name,
            "group_order": Q.order,
            "factors": list(M.factors),
            "action": M.action.tolist(),
            "stratum": "trivial" if is_trivial_action(M) else "nontrivial",
            "h2": list(H.invariant_factors),
            "oracle_h2": oracle_h2,
            "classes": classes,
        })
    return {"caps": caps, "seed": seed, "rows": rows, "summary": summarise(rows)}


def summarise(rows):
    all_classes = [c for r in rows for c in r["classes"]]
    nontrivial = Counter()
    for r in rows:
        nontrivial[r["stratum"]] += sum(1 for c in r["classes"] if not c["split"])
    orders = Counter(c["class_order"] for c in all_classes)
    split = sum(1 for c in all_classes if c["split"])
    minimal = Counter(c["oracle_defect"] for c in all_classes if c["oracle_defect"] is not None)
    return {
        "instances": len(rows),
        "classes": len(all_classes),
        "nontrivial_classes": len(all_classes) - split,
        "nontrivial_by_stratum": {k: nontrivial.get(k, 0) for k in ("trivial", "nontrivial")},
        "split_fraction": f"{split}/{len(all_classes)}" if all_classes else "0/0",
        "class_order_histogram": {str(k): v for k, v in sorted(orders.items())},
        "minimal_defect_histogram": {str(k): v for k, v in sorted(minimal.items())},
    }


def run(caps=None, seed=0):
    try:
        return sweep(caps, seed)
    except TooLarge as exc:
        raise ValueError(str(exc)) from exc
