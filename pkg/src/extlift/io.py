"""JSON documents for groups, modules, cocycles, extensions and lattices.

Every top-level problem document carries ``"schema": 1``.  Parsers raise
:class:`SchemaError` with a short diagnostic on anything malformed;
serialisers emit canonical, sorted output so equal objects give equal
bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .cohomology import Cochain
from .exceptions import SchemaError
from .fingroup import FiniteGroup, dihedral, direct_product, make_cyclic, quaternion, symmetric
from .lattice import EquivariantSurjection, QLattice
from .qmodule import DivisibleWorkspace, FiniteAbelianModule, FpVectorModule

SCHEMA_VERSION = 1


def dumps(obj):
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(to_plain(obj), sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def to_plain(obj):
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _require(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return value


def _int(value, what, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(f"{what} must be at least {minimum}")
    return value


def _matrix(value, rows, cols, what):
    try:
        arr = np.array(value, dtype=object)
    except Exception as exc:  # ragged input
        raise SchemaError(f"{what} is not a matrix") from exc
    if arr.shape != (rows, cols):
        raise SchemaError(f"{what} should be {rows}x{cols}, got shape {arr.shape}")
    for x in arr.ravel():
        _int(x, what)
    return arr.astype(np.int64)


def check_schema(doc):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f'"schema": {SCHEMA_VERSION} is required')
    return doc


# --- groups ------------------------------------------------------------------

def group_from_doc(doc):
    if not isinstance(doc, dict):
        raise SchemaError("group document must be an object")
    if "table" in doc:
        table = doc["table"]
        n = _int(doc.get("order", len(table) if isinstance(table, list) else -1), "order", 1)
        arr = _matrix(table, n, n, "group table")
        try:
            return FiniteGroup(arr)
        except ValueError as exc:
            raise SchemaError(f"invalid group table: {exc}") from exc
    if "cyclic" in doc:
        return make_cyclic(_int(doc["cyclic"], "cyclic order", 1))
    if "product" in doc:
        parts = doc["product"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise SchemaError("product needs exactly two group documents")
        return direct_product(group_from_doc(parts[0]), group_from_doc(parts[1]))
    if "dihedral" in doc:
        return dihedral(_int(doc["dihedral"], "dihedral n", 1))
    if "symmetric" in doc:
        return symmetric(_int(doc["symmetric"], "symmetric n", 1))
    if doc.get("quaternion") is True:
        return quaternion()
    raise SchemaError("unrecognised group document")


def group_to_doc(G):
    return {"order": int(G.order), "table": G.table.tolist()}


# --- modules -----------------------------------------------------------------

def _action_from_doc(Q, action, k):
    if action is None:
        return None
    if not isinstance(action, dict):
        raise SchemaError("action must map element indices to matrices")
    out = {}
    for key, mat in action.items():
        try:
            g = int(key)
        except ValueError as exc:
            raise SchemaError(f"action key {key!r} is not an element index") from exc
        if not 0 <= g < Q.order:
            raise SchemaError(f"action key {g} is out of range")
        out[g] = _matrix(mat, k, k, f"action matrix for {g}")
    return out


def module_from_doc(doc, Q):
    kind = _require(doc, "kind", str)
    try:
        if kind == "finite":
            factors = _require(doc, "factors", list)
            factors = [_int(d, "factor", 1) for d in factors]
            return FiniteAbelianModule(Q, factors, _action_from_doc(Q, doc.get("action"), len(factors)))
        if kind == "fp":
            p = _int(_require(doc, "p"), "p", 2)
            rank = _int(_require(doc, "rank"), "rank", 0)
            return FpVectorModule(Q, p, rank, _action_from_doc(Q, doc.get("action"), rank))
        if kind == "divisible":
            rank = _int(_require(doc, "rank"), "rank", 0)
            exponent = _int(_require(doc, "exponent"), "exponent", 1)
            return DivisibleWorkspace(Q, rank, exponent, _action_from_doc(Q, doc.get("action"), rank))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"invalid module: {exc}") from exc
    raise SchemaError(f"unknown module kind {kind!r}")


def module_to_doc(M):
    doc = {"kind": M.kind, "action": {str(g): M.action[g].tolist() for g in range(M.group.order)}}
    if M.kind == "fp":
        doc.update(p=int(M.p), rank=int(M.rank))
    elif M.kind == "divisible":
        doc.update(rank=int(M.rank), exponent=int(M.D))
        doc["action"] = {str(g): M.integer_action[g].tolist() for g in range(M.group.order)}
    else:
        doc["factors"] = list(M.factors)
    return doc


# --- cochains ----------------------------------------------------------------

def cochain_from_doc(entries, M, degree=2):
    if not isinstance(entries, list):
        raise SchemaError("cocycle document must be a list of {args, value}")
    n, k = M.group.order, M.rank
    values = np.zeros((n,) * degree + (k,), dtype=np.int64)
    seen = set()
    for item in entries:
        args = _require(item, "args", list)
        value = _require(item, "value", list)
        if len(args) != degree or len(value) != k:
            raise SchemaError("cocycle entry has the wrong arity")
        args = tuple(_int(a, "cocycle argument", 0) for a in args)
        if any(a >= n for a in args):
            raise SchemaError(f"cocycle argument {args} is out of range")
        if args in seen:
            raise SchemaError(f"duplicate cocycle entry {args}")
        seen.add(args)
        values[args] = [_int(v, "cocycle value") for v in value]
    c = Cochain(M, degree, values, check=False)
    if not c.is_normalized():
        raise SchemaError("cochain must vanish when an argument is the identity")
    return c


def cochain_to_doc(c):
    vals = c.module.reduce(c.values)
    out = []
    for args in np.ndindex(*vals.shape[:-1]):
        v = vals[args]
        if v.any():
            out.append({"args": [int(a) for a in args], "value": v.tolist()})
    return out


# --- extensions ----------------------------------------------------------------

def extension_from_doc(doc):
    """``(Q, M, c)`` from ``{"group", "module", "cocycle"}``; c may be omitted (split)."""
    Q = group_from_doc(_require(doc, "group"))
    M = module_from_doc(_require(doc, "module", dict), Q)
    c = cochain_from_doc(doc.get("cocycle", []), M)
    return Q, M, c


def extension_to_doc(Q, M, c):
    return {
        "schema": SCHEMA_VERSION,
        "group": group_to_doc(Q),
        "module": module_to_doc(M),
        "cocycle": cochain_to_doc(c),
    }


def complement_to_doc(res):
    witness = {}
    for key, value in sorted(res.witness.items()):
        if isinstance(value, Cochain):
            witness[key] = {"degree": value.degree, "exponent": int(value.module.exponent),
                            "values": cochain_to_doc(value)}
    return {
        "n": res.class_order_used,
        "defect_factors": [int(f) for f in res.defect_factors],
        "F_order": int(res.F.order),
        "F_elements": [int(x) for x in res.F.elements],
        "witness": witness,
    }


# --- lattices ----------------------------------------------------------------

def lattice_from_doc(doc, W=None):
    if W is None:
        W = group_from_doc(_require(doc, "group"))
    rank = _int(_require(doc, "rank"), "rank", 0)
    try:
        return QLattice(W, rank, _action_from_doc(W, doc.get("action"), rank))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"invalid lattice: {exc}") from exc


def lattice_to_doc(L, with_group=True):
    doc = {"rank": L.rank, "action": {str(g): L.action[g].tolist() for g in range(L.group.order)}}
    if with_group:
        doc["group"] = group_to_doc(L.group)
    return doc


def surjection_from_doc(doc):
    """``{"group", "source": lattice, "target": lattice, "matrix"}``.

    The group may sit at the top level or inside the source document.
    Surjectivity and equivariance are left to the caller to check.
    """
    gdoc = doc.get("group") if isinstance(doc, dict) else None
    src_doc = _require(doc, "source", dict)
    W = group_from_doc(gdoc if gdoc is not None else _require(src_doc, "group"))
    src = lattice_from_doc(src_doc, W)
    tgt = lattice_from_doc(_require(doc, "target", dict), W)
    R = _matrix(_require(doc, "matrix"), tgt.rank, src.rank, "surjection matrix")
    return EquivariantSurjection(src, tgt, R, check=False)


def surjection_to_doc(rho):
    return {
        "schema": SCHEMA_VERSION,
        "group": group_to_doc(rho.group),
        "source": lattice_to_doc(rho.source, with_group=False),
        "target": lattice_to_doc(rho.target, with_group=False),
        "matrix": rho.matrix.tolist(),
    }


def splitting_to_doc(result, report=None):
    doc = {
        "section_numerator": result.section_numerator.tolist(),
        "denominator": result.denominator,
        "lattice": result.lattice.tolist(),
        "index": result.index,
        "quotient_invariants": result.quotient_invariants,
    }
    if report is not None:
        doc["verification"] = report
    return to_plain(doc)


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
