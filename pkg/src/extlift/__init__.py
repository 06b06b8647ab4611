"""Quasi-complements of finite group extensions by commutative modules.

The package builds extensions ``1 -> M -> E -> Q -> 1`` from explicit
2-cocycles, computes ``H^2(Q, M)`` exactly, and constructs finite
subgroups ``F`` with ``E = N F`` (N the image of M) whose defect
``N ∩ F`` is controlled by the class order.  Brute-force oracles in
:mod:`extlift.oracle` cross-check every constructive result.
"""

from .cohomology import (
    Cochain,
    CohomologyGroup,
    class_order,
    coboundary,
    h2,
    is_cocycle,
    killing_cochain,
    solve_coboundary,
)
from .exceptions import (
    CoefficientMismatch,
    DimensionMismatch,
    ExtliftError,
    NotACocycle,
    NotEquivariant,
    NotNormal,
    NotSurjective,
    OracleMismatch,
    SchemaError,
    SolverFailed,
    TooLarge,
)
from .extension import ExtensionGroup, build_extension, is_quasi_complement
from .fingroup import FiniteGroup, Subgroup, direct_product, make_cyclic
from .lattice import EquivariantSurjection, QLattice, SplittingResult, stable_sublattice, verify_splitting
from .qmodule import DivisibleWorkspace, FiniteAbelianModule, FpVectorModule
from .quasisplit import ComplementResult, compose, divisible_complement, quasi_complement, vector_complement

__version__ = "0.1.0"

__all__ = [
    "Cochain", "CohomologyGroup", "class_order", "coboundary", "h2", "is_cocycle",
    "killing_cochain", "solve_coboundary",
    "CoefficientMismatch", "DimensionMismatch", "ExtliftError", "NotACocycle", "NotEquivariant",
    "NotNormal", "NotSurjective", "OracleMismatch", "SchemaError", "SolverFailed", "TooLarge",
    "ExtensionGroup", "build_extension", "is_quasi_complement",
    "FiniteGroup", "Subgroup", "direct_product", "make_cyclic",
    "EquivariantSurjection", "QLattice", "SplittingResult", "stable_sublattice", "verify_splitting",
    "DivisibleWorkspace", "FiniteAbelianModule", "FpVectorModule",
    "ComplementResult", "compose", "divisible_complement", "quasi_complement", "vector_complement",
]
