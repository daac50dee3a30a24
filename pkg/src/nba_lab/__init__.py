"""Exact toolkit for measure algebras under the symmetric-difference metric.

Sets are finite unions of rational boxes and slope-1 triangles (plus atom
sets for atomic measures); every measure and squared distance is an exact
rational or infinity.
"""
from .approx import (
    ApproxReport,
    Partition,
    best_approximation,
    find_level,
    probe_approximability,
    refines,
    standard_filtration,
    uniform_error,
)
from .classify import Tri, Verdict, classify, justify
from .errors import (
    CostGuardError,
    FamilyError,
    GeometryError,
    InputError,
    ModelError,
    NBAError,
    NotFoundError,
    PreconditionError,
)
from .extended import INF, ExtendedRational
from .geometry import Box, Region, SlopeTriangle, make_dyadic_cube, measure
from .measures import (
    AtomSet,
    AtomUniverse,
    ConstantTail,
    GeometricTail,
    LebesgueWindow,
    MeasureModel,
    MixedSet,
    UncountableTail,
    atoms_fin,
    atoms_inf,
    decompose,
    mu,
)
from .metric import dist_sq, in_closed_ball, triangle_holds
from .oracle import exhaustive_best_approx, exhaustive_net_check, jordan_bounds
from .witness import (
    build_net,
    discrete_family,
    make_alpha_witness,
    make_Tm,
    make_Tm_eps,
    verify_cell_witness,
    verify_net,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxReport", "Partition", "best_approximation", "find_level", "probe_approximability",
    "refines", "standard_filtration", "uniform_error",
    "Tri", "Verdict", "classify", "justify",
    "CostGuardError", "FamilyError", "GeometryError", "InputError", "ModelError", "NBAError",
    "NotFoundError", "PreconditionError",
    "INF", "ExtendedRational",
    "Box", "Region", "SlopeTriangle", "make_dyadic_cube", "measure",
    "AtomSet", "AtomUniverse", "ConstantTail", "GeometricTail", "LebesgueWindow", "MeasureModel",
    "MixedSet", "UncountableTail", "atoms_fin", "atoms_inf", "decompose", "mu",
    "dist_sq", "in_closed_ball", "triangle_holds",
    "exhaustive_best_approx", "exhaustive_net_check", "jordan_bounds",
    "build_net", "discrete_family", "make_alpha_witness", "make_Tm", "make_Tm_eps",
    "verify_cell_witness", "verify_net",
]
