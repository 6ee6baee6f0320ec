"""Closed-form recovery of the two unknown coefficients for each case."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Callable

from ..errors import DomainError, NoBracket, OverflowGuard
from ..model import (
    SQRT_PI,
    KnownData,
    ThermalCoefficients,
    f4,
    f5,
    f6,
    face_factor,
    g5,
    residual_eq1,
    residual_eq2,
)
from ..rootfind import RootResult
from ..specfun import exp_sq
from .equations import XiEquation, solve_xi
from .restrictions import RestrictionReport, audit_restrictions
from .scenario import CaseId, Scenario

__all__ = ["Kind", "Tolerances", "Family", "Violation", "CaseSolution", "solve_case", "XI_EQUATION"]


class Kind(str, enum.Enum):
    UNIQUE = "Unique"
    FAMILY = "Family"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class Tolerances:
    """Solver tolerances.

    ``epsilon_margin``: a recovered epsilon closer than this to 0 or 1 is
    rounding noise around an excluded endpoint and is rejected.
    """

    tol_x: float = 1e-12
    residual: float = 1e-10
    epsilon_margin: float = 1e-12

    def __post_init__(self):
        if not (self.tol_x > 0 and self.residual > 0 and self.epsilon_margin > 0):
            raise ValueError("tolerances must be positive")


XI_EQUATION = {
    CaseId.EPS_K: XiEquation.E4,
    CaseId.GAMMA_K: XiEquation.E4,
    CaseId.L_K: XiEquation.E4,
    CaseId.EPS_RHO: XiEquation.E5,
    CaseId.EPS_C: XiEquation.E5,
    CaseId.GAMMA_RHO: XiEquation.E5,
    CaseId.GAMMA_C: XiEquation.E5,
    CaseId.L_RHO: XiEquation.E5,
    CaseId.L_C: XiEquation.E5,
    CaseId.RHO_C: XiEquation.E5,
    CaseId.K_RHO: XiEquation.E13,
    CaseId.K_C: XiEquation.E14,
}


@dataclass(frozen=True)
class Family:
    """One-parameter continuum of solutions.

    ``interval`` is open; ``math.inf`` marks an unbounded upper end.
    """

    parameter: str
    interval: tuple[float, float]
    build: Callable[[float], ThermalCoefficients] = field(repr=False, compare=False)
    scale: float = 1.0

    def at(self, value: float) -> ThermalCoefficients:
        lo, hi = self.interval
        if not lo < value < hi:
            raise DomainError(f"{self.parameter}={value!r} outside ({lo}, {hi})")
        return self.build(value)

    def default_range(self) -> tuple[float, float]:
        if math.isinf(self.interval[1]):
            return 1e-3 * self.scale, 1e3 * self.scale
        return 0.01, 0.99

    def sample(self, n: int, lo: float | None = None, hi: float | None = None) -> list[tuple[float, ThermalCoefficients]]:
        """``n`` deterministic members: linear for bounded, geometric for unbounded intervals."""
        dlo, dhi = self.default_range()
        lo = dlo if lo is None else lo
        hi = dhi if hi is None else hi
        if n == 1:
            values = [0.5 * (lo + hi)] if not math.isinf(self.interval[1]) else [math.sqrt(lo * hi)]
        elif math.isinf(self.interval[1]):
            r = math.log(hi / lo)
            values = [lo * math.exp(r * i / (n - 1)) for i in range(n)]
        else:
            values = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
        return [(v, self.at(v)) for v in values]


@dataclass
class Violation:
    id: str
    margin: float | None = None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "margin": self.margin, "note": self.note}


@dataclass
class CaseSolution:
    case: CaseId
    kind: Kind
    report: RestrictionReport
    coefficients: ThermalCoefficients | None = None
    xi: float | None = None
    family: Family | None = None
    violations: list[Violation] = field(default_factory=list)
    residuals: dict[str, float] | None = None
    root: RootResult | None = None
    note: str = ""

    @property
    def violation_ids(self) -> list[str]:
        return [v.id for v in self.violations]


def _eq1_l(known, k, rho, eps, gamma, e):
    # latent heat from the balance equation, e = exp(xi^2)
    s = known.sigma
    return known.q0 / (rho * s * (1.0 + gamma * k * (1.0 - eps) * e / (2.0 * known.q0 * s)) * e)


def _family(scenario: Scenario, tol: Tolerances) -> tuple[Family | None, list[Violation], float]:
    kn, g, case = scenario.known, scenario.given, scenario.case
    q0, s = kn.q0, kn.sigma
    report_like = []
    xi = s * math.sqrt(g["rho"] * g["c"] / g["k"])
    e = exp_sq(xi)
    if case is CaseId.EPS_GAMMA:
        R = q0 / (g["rho"] * g["l"] * s)
        scale = 2.0 * q0 * s / g["k"] * (R / e - 1.0) / e
        if not scale > 0:
            report_like.append(Violation("R1", scale, "gamma would be non-positive for every epsilon"))
            return None, report_like, xi

        def build(eps):
            return ThermalCoefficients(l=g["l"], k=g["k"], rho=g["rho"], c=g["c"], epsilon=eps, gamma=scale / (1.0 - eps))

        return Family("epsilon", (0.0, 1.0), build), report_like, xi

    if case is CaseId.EPS_L:
        def build(eps):
            l = _eq1_l(kn, g["k"], g["rho"], eps, g["gamma"], e)
            return ThermalCoefficients(l=l, k=g["k"], rho=g["rho"], c=g["c"], epsilon=eps, gamma=g["gamma"])

        return Family("epsilon", (0.0, 1.0), build), report_like, xi

    def build(gamma):
        l = _eq1_l(kn, g["k"], g["rho"], g["epsilon"], gamma, e)
        return ThermalCoefficients(l=l, k=g["k"], rho=g["rho"], c=g["c"], epsilon=g["epsilon"], gamma=gamma)

    return Family("gamma", (0.0, math.inf), build, scale=2.0 * q0 * s / g["k"]), report_like, xi


def _unique(scenario: Scenario, xi: float) -> dict[str, float]:
    """Evaluate the two unknowns at the similarity parameter ``xi``."""
    kn, g, case = scenario.known, scenario.given, scenario.case
    q0, s, D = kn.q0, kn.sigma, kn.D_inf
    P = face_factor(kn)
    x2 = xi * xi
    e = exp_sq(xi)
    out: dict[str, float] = {}

    # the coefficient fixed by xi = sigma sqrt(rho c / k)
    if case in (CaseId.EPS_K, CaseId.GAMMA_K, CaseId.L_K):
        out["k"] = g["rho"] * g["c"] * (s / xi) ** 2
    elif case in (CaseId.EPS_RHO, CaseId.GAMMA_RHO, CaseId.L_RHO):
        out["rho"] = g["k"] / g["c"] * (xi / s) ** 2
    elif case in (CaseId.EPS_C, CaseId.GAMMA_C, CaseId.L_C):
        out["c"] = g["k"] / g["rho"] * (xi / s) ** 2
    elif case in (CaseId.K_RHO, CaseId.K_C):
        k = q0 * s * SQRT_PI / (D * P) * g5(xi)
        out["k"] = k
        if case is CaseId.K_RHO:
            out["rho"] = k * x2 / (g["c"] * s * s)
        else:
            out["c"] = k * x2 / (g["rho"] * s * s)
    if case is CaseId.RHO_C:
        k, l, eps, gamma = g["k"], g["l"], g["epsilon"], g["gamma"]
        bracket = 1.0 + gamma * k * (1.0 - eps) * e / (2.0 * q0 * s)
        out["rho"] = q0 / (l * s) / e / bracket
        out["c"] = k * l / (s * q0) * bracket * x2 * e

    full = {**g, **out}
    if case is CaseId.EPS_K:
        out["epsilon"] = 1.0 - f4(xi, kn, full)
    elif case is CaseId.EPS_RHO:
        out["epsilon"] = 1.0 - f5(xi, kn, full)
    elif case is CaseId.EPS_C:
        out["epsilon"] = 1.0 - f6(xi, kn, full)
    elif case is CaseId.GAMMA_K:
        R = q0 / (g["rho"] * g["l"] * s)
        out["gamma"] = 2.0 * q0 / (s * g["rho"] * g["c"] * (1.0 - g["epsilon"])) * (R / e - 1.0) * x2 / e
    elif case in (CaseId.GAMMA_RHO, CaseId.GAMMA_C):
        # back-substitution into the balance equation at the found xi
        R = q0 / (full["rho"] * g["l"] * s)
        out["gamma"] = 2.0 * q0 * s / (g["k"] * (1.0 - g["epsilon"])) * (R / e - 1.0) / e
    elif case in (CaseId.L_K, CaseId.L_RHO, CaseId.L_C):
        out["l"] = _eq1_l(kn, full["k"], full["rho"], g["epsilon"], g["gamma"], e)
    return out


def _semantic_tag(exc: DomainError) -> str:
    msg = str(exc)
    return "epsilon_range" if msg.startswith("epsilon") else "positivity"


def solve_case(scenario: Scenario, tol: Tolerances | None = None) -> CaseSolution:
    """Recover the case's two unknown coefficients.

    Cases 1-3 return a :class:`Family`; cases 4-15 solve the case's equation
    for ``xi`` and evaluate the coefficients in closed form.  Any failure
    (no root, coefficient out of range, residual above tolerance) yields an
    ``Infeasible`` solution whose violations name the responsible
    restrictions from the audit plus a semantic tag.
    """
    tol = tol or Tolerances()
    case = scenario.case
    report = audit_restrictions(scenario)

    def infeasible(tags: list[Violation], note: str = "", xi=None, root=None) -> CaseSolution:
        viol = [Violation(rid, report[rid].margin, report[rid].note) for rid in report.blamed]
        seen = {v.id for v in viol}
        viol += [t for t in tags if t.id not in seen]
        return CaseSolution(case, Kind.INFEASIBLE, report, xi=xi, violations=viol, root=root, note=note)

    if case.is_family:
        eq2 = report["eq2"]
        try:
            family, tags, xi = _family(scenario, tol)
        except OverflowGuard as exc:
            return infeasible([Violation("overflow", None, str(exc))], note=str(exc))
        if not eq2.satisfied:
            tags = [Violation("eq2", eq2.margin, "convective face condition not met"), *tags]
        if tags:
            return infeasible(tags, xi=xi)
        return CaseSolution(case, Kind.FAMILY, report, xi=xi, family=family)

    try:
        root = solve_xi(XI_EQUATION[case], scenario.known, scenario.given, tol.tol_x)
    except NoBracket as exc:
        # a blamed restriction already explains the missing root
        tags = [] if report.blamed else [Violation(f"{XI_EQUATION[case].value}-solvability", None, str(exc))]
        return infeasible(tags, note=str(exc))
    except OverflowGuard as exc:
        return infeasible([Violation("overflow", None, str(exc))], note=str(exc))

    xi = root.root
    try:
        unknowns = _unique(scenario, xi)
    except OverflowGuard as exc:
        return infeasible([Violation("overflow", None, str(exc))], note=str(exc), xi=xi, root=root)
    eps = unknowns.get("epsilon")
    if eps is not None and 0.0 < eps < 1.0 and min(eps, 1.0 - eps) <= tol.epsilon_margin:
        msg = f"epsilon={eps!r} is within {tol.epsilon_margin} of an excluded endpoint"
        return infeasible([Violation("epsilon_range", None, msg)], note=msg, xi=xi, root=root)
    try:
        coeffs = ThermalCoefficients(**{**scenario.given, **unknowns})
    except DomainError as exc:
        return infeasible([Violation(_semantic_tag(exc), None, str(exc))], note=str(exc), xi=xi, root=root)

    res = {"eq1": residual_eq1(scenario.known, coeffs), "eq2": residual_eq2(scenario.known, coeffs)}
    if max(abs(v) for v in res.values()) > tol.residual:
        sol = infeasible([Violation("residual", max(abs(v) for v in res.values()), "consistency residual above tolerance")],
                         xi=xi, root=root)
        sol.residuals = res
        return sol
    return CaseSolution(case, Kind.UNIQUE, report, coefficients=coeffs, xi=xi, residuals=res, root=root)
