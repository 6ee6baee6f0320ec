"""Inverse cases: which two coefficients are unknown, and how to recover them."""

from .equations import AuxRoot, XiEquation, aux_root_problem, solve_auxiliary_root, solve_xi, xi_problem
from .restrictions import (
    BOUNDARY_TOL,
    CASE_RULES,
    Case4Sufficiency,
    RestrictionEntry,
    RestrictionReport,
    Sufficiency,
    audit_restrictions,
    check_case4_sufficient,
)
from .scenario import UNKNOWNS, CaseId, Scenario, parse_case
from .solver import XI_EQUATION, CaseSolution, Family, Kind, Tolerances, Violation, solve_case

__all__ = [
    "AuxRoot", "XiEquation", "aux_root_problem", "solve_auxiliary_root", "solve_xi", "xi_problem",
    "BOUNDARY_TOL", "CASE_RULES", "Case4Sufficiency", "RestrictionEntry", "RestrictionReport",
    "Sufficiency", "audit_restrictions", "check_case4_sufficient",
    "UNKNOWNS", "CaseId", "Scenario", "parse_case",
    "XI_EQUATION", "CaseSolution", "Family", "Kind", "Tolerances", "Violation", "solve_case",
]
