"""Algebraic GSV index of a holomorphic vector field tangent to a hypersurface germ."""

from .errors import GSVError, NoStabilization, NotRegular, NotTangent
from .index import IndexReport, Invariants, full_report, gsv_index_homological, gsv_index_residue
from .local import Truncation, colength
from .parser import ProblemSpec, make_problem, parse_polynomial, parse_problem
from .polynomial import Polynomial
from .residue import grothendieck_residue, poincare_hopf_index

__all__ = [
    "GSVError",
    "IndexReport",
    "Invariants",
    "NoStabilization",
    "NotRegular",
    "NotTangent",
    "Polynomial",
    "ProblemSpec",
    "Truncation",
    "colength",
    "full_report",
    "grothendieck_residue",
    "gsv_index_homological",
    "gsv_index_residue",
    "make_problem",
    "parse_polynomial",
    "parse_problem",
    "poincare_hopf_index",
]
