"""Command line front end: JSON problem documents in, JSON reports out.

Exit codes: 0 success, 2 schema error, 3 not a cocycle, 4 not surjective,
5 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology as coh
from . import io
from .exceptions import (
    NotACocycle,
    NotEquivariant,
    NotSurjective,
    OracleMismatch,
    SchemaError,
)
from .extension import ExtensionGroup, defect_group, is_quasi_complement, module_of_defect
from .fingroup import Subgroup
from .lattice import stable_sublattice, verify_splitting
from .qmodule import abelian_invariants
from .quasisplit import divisible_complement, quasi_complement, torsion_bound_check, vector_complement

EXIT_OK, EXIT_SCHEMA, EXIT_COCYCLE, EXIT_SURJECTIVE, EXIT_MISMATCH = 0, 2, 3, 4, 5


def cmd_cohomology(doc, args=None):
    io.check_schema(doc)
    Q = io.group_from_doc(io._require(doc, "group"))
    M = io.module_from_doc(io._require(doc, "module", dict), Q)
    H = coh.h2(Q, M)
    bound = torsion_bound_check(Q, M)
    report = {
        "command": "cohomology",
        "group_order": Q.order,
        "module_order": M.order,
        "invariant_factors": list(H.invariant_factors),
        "representatives": [io.cochain_to_doc(r) for r in H.representatives],
        "bound_ok": bound["bound_ok"],
        "max_class_order": bound["max_class_order"],
    }
    summary = f"H^2 = {_fmt_factors(H.invariant_factors)}; every factor divides |Q| = {Q.order}: {bound['bound_ok']}"
    return report, summary


def cmd_complement(doc, args=None):
    io.check_schema(doc)
    Q, M, c = io.extension_from_doc(doc)
    coh._require_cocycle(c)
    if M.kind == "divisible":
        res = divisible_complement(Q, M, c)
    elif M.kind == "fp":
        res = vector_complement(Q, M, c)
    else:
        res = quasi_complement(Q, M, c)
    n = coh.class_order(c)
    report = {"command": "complement"}
    report.update(io.complement_to_doc(res))
    report["extension"] = {"carrier_order": int(res.extension.order), "class_order": n, "split": n == 1}
    summary = (f"|E| = {res.extension.order}, class order {n}; "
               f"|F| = {res.F.order}, defect {_fmt_factors(res.defect_factors)}")
    return report, summary


def cmd_lattice_split(doc, args=None):
    io.check_schema(doc)
    rho = io.surjection_from_doc(doc)
    rho.check_equivariant()
    rho.check_surjective()
    res = stable_sublattice(rho)
    report = verify_splitting(res, rho)
    out = {"command": "lattice-split"}
    out.update(io.splitting_to_doc(res, report))
    q = res.quotient_invariants
    summary = (f"d = {res.denominator}, index {res.index}, quotient torsion {q['torsion']} "
               f"free rank {q['free_rank']}; checks {'all pass' if all(report.values()) else 'FAILED'}")
    return out, summary


def cmd_verify(doc, args=None):
    io.check_schema(doc)
    Q, M, c = io.extension_from_doc(doc)
    coh._require_cocycle(c)
    E = ExtensionGroup(Q, M, c)
    raw = io._require(doc, "F", list)
    elements = [io._int(x, "element of F") for x in raw]
    if any(not 0 <= x < E.order for x in elements):
        raise SchemaError("an element of F is out of range")
    F = Subgroup(E, elements)
    closed = F.is_closed() and 0 in F
    report = {"command": "verify", "subgroup": closed, "quasi_complement": False, "defect_factors": None}
    if closed:
        report["quasi_complement"] = is_quasi_complement(E, F)
        D = defect_group(E, F)
        report["defect_factors"] = list(abelian_invariants(M, module_of_defect(E, D)))
        report["defect_order"] = int(D.order)
    verdict = closed and report["quasi_complement"]
    report["verdict"] = verdict
    summary = f"E = N F: {verdict}" + (f", defect {_fmt_factors(report['defect_factors'])}" if closed else ", F is not a subgroup")
    return report, summary


def cmd_zoo(doc, args=None):
    from .zoo import sweep

    doc = doc or {}
    if doc:
        io.check_schema(doc)
    caps = dict(doc.get("caps", {}))
    seed = doc.get("seed", 0)
    if args is not None and args.caps is not None:
        try:
            caps.update(json.loads(args.caps))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--caps is not valid JSON: {exc}") from exc
    if args is not None and args.seed is not None:
        seed = args.seed
    try:
        report = sweep(caps, seed)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, OracleMismatch):
            raise
        raise SchemaError(str(exc)) from exc
    report = {"command": "zoo", **report}
    s = report["summary"]
    summary = (f"{s['instances']} instances, {s['classes']} classes, "
               f"{s['nontrivial_classes']} non-split, split fraction {s['split_fraction']}")
    return report, summary


COMMANDS = {
    "cohomology": cmd_cohomology,
    "complement": cmd_complement,
    "lattice-split": cmd_lattice_split,
    "verify": cmd_verify,
    "zoo": cmd_zoo,
}


def _fmt_factors(factors):
    factors = list(factors or [])
    return " x ".join(f"Z/{f}" for f in factors) if factors else "0"


def build_parser():
    p = argparse.ArgumentParser(prog="extlift", description="Quasi-complements of finite group extensions.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="problem document (JSON); '-' reads standard input")
    p.add_argument("--seed", type=int, help="seed for randomised sweeps")
    p.add_argument("--caps", help="size caps for zoo, as JSON")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return p


def _read(path):
    if path is None:
        return None
    if path == "-":
        try:
            return json.load(sys.stdin)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    try:
        return io.load(path)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc = _read(args.input)
        if doc is None and args.command != "zoo":
            raise SchemaError("--input is required")
        report, summary = COMMANDS[args.command](doc, args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=stderr)
        return EXIT_SCHEMA
    except NotACocycle as exc:
        print(f"not a cocycle: {exc}", file=stderr)
        return EXIT_COCYCLE
    except NotSurjective as exc:
        print(f"not surjective: {exc}", file=stderr)
        return EXIT_SURJECTIVE
    except NotEquivariant as exc:
        print(f"schema error: {exc}", file=stderr)
        return EXIT_SCHEMA
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=stderr)
        return EXIT_MISMATCH
    if args.format == "json":
        stdout.write(io.dumps(report))
        print(summary, file=stderr)
    else:
        print(summary, file=stdout)
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
