"""Coefficient recovery for one-phase solidification with a mushy zone.

The similarity solution ``T = A + B erf(x / (2 sqrt(alpha t)))`` of the
overspecified two-front problem ties the material coefficients together
through two balance equations.  Given the face data and four of the six
coefficients, :func:`solve_case` recovers the remaining pair, or reports a
one-parameter family or the data restrictions that rule a solution out.
"""

from .cases import CaseId, CaseSolution, Kind, Scenario, Tolerances, audit_restrictions, solve_case
from .errors import (
    DomainError,
    MaxIterations,
    MissingParameter,
    MushyInverseError,
    NoBracket,
    NoRoot,
    OverflowGuard,
)
from .model import KnownData, SimilaritySolution, ThermalCoefficients, make_similarity
from .oracle import GridSpec, VerificationReport, scan_roots, verify

__version__ = "0.1.0"

__all__ = [
    "CaseId", "CaseSolution", "Kind", "Scenario", "Tolerances", "audit_restrictions", "solve_case",
    "DomainError", "MaxIterations", "MissingParameter", "MushyInverseError", "NoBracket", "NoRoot", "OverflowGuard",
    "KnownData", "SimilaritySolution", "ThermalCoefficients", "make_similarity",
    "GridSpec", "VerificationReport", "scan_roots", "verify",
]
