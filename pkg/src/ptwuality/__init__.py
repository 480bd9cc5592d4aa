"""Partial-twuality polynomials of square matrices over GF(2), GF(p) and Q,
of grafts (graphs with marked vertices) and of one-vertex ribbon graphs."""

from __future__ import annotations

from .bouquet import Bouquet, intersection_graft, topological_polynomial, topological_polynomials
from .errors import (
    ContractViolation,
    InternalInvariantViolation,
    NotBlockDiagonal,
    ParseError,
    SingularMatrix,
    SingularPrincipalMinor,
    SizeCapExceeded,
    TwualityError,
    UnsupportedOperator,
    ZeroPolynomial,
)
from .exactla import Matrix, Subset, corank, inverse, pivot, principal_submatrix, rank
from .fields import GF2, Q, Field, gfp
from .graft import Graft, adjacency_matrix, graft_polynomial, graft_polynomials, kn_closed_form
from .intpoly import GapReport, IntPolynomial, gap_report
from .twuality import ALL_OPERATORS, Twuality, all_polynomials, exponent, interlace_polynomial, polynomial

__version__ = "0.1.0"

__all__ = [
    "ALL_OPERATORS",
    "GF2",
    "Q",
    "Bouquet",
    "ContractViolation",
    "Field",
    "GapReport",
    "Graft",
    "IntPolynomial",
    "InternalInvariantViolation",
    "Matrix",
    "NotBlockDiagonal",
    "ParseError",
    "SingularMatrix",
    "SingularPrincipalMinor",
    "SizeCapExceeded",
    "Subset",
    "Twuality",
    "TwualityError",
    "UnsupportedOperator",
    "ZeroPolynomial",
    "adjacency_matrix",
    "all_polynomials",
    "corank",
    "exponent",
    "gap_report",
    "gfp",
    "graft_polynomial",
    "graft_polynomials",
    "interlace_polynomial",
    "intersection_graft",
    "inverse",
    "kn_closed_form",
    "pivot",
    "polynomial",
    "principal_submatrix",
    "rank",
    "topological_polynomial",
    "topological_polynomials",
]
