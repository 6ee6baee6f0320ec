"""Audit of the data restrictions R1-R19 for each case.

Every entry records the two sides of its inequality, a signed margin
(positive when satisfied) and a warning flag when the margin falls inside the
``BOUNDARY_TOL`` grey zone.  A handful of restrictions are printed in two
inconsistent forms in the literature; for those the reading that follows from
the balance equations is evaluated and the other one is attached under
``alternate``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

from ..errors import DomainError, NoRoot
from ..model import (
    SQRT_PI,
    KnownData,
    aux_constants,
    f4,
    f5,
    face_factor,
    flux_ratio,
    g4,
    g5,
    g14,
    h14,
    latent_ratio,
    mushy_ratio,
)
from ..specfun import erf
from .equations import EQUALITY_TOL, AuxRoot, solve_auxiliary_root
from .scenario import CaseId, Scenario

__all__ = [
    "BOUNDARY_TOL",
    "RestrictionEntry",
    "RestrictionReport",
    "CASE_RULES",
    "audit_restrictions",
    "Sufficiency",
    "Case4Sufficiency",
    "check_case4_sufficient",
]

BOUNDARY_TOL = 1e-9
DISCREPANCY_NOTE = "reconciled: derived condition replaces the catalogued form"


@dataclass
class RestrictionEntry:
    id: str
    relation: str
    lhs: float | None
    rhs: float | None
    satisfied: bool
    margin: float | None
    note: str = ""
    lower: float | None = None
    warning: bool = False
    alternate: dict[str, Any] | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "strictness_margin": self.margin,
            "warning": self.warning,
            "note": self.note,
        }
        if self.lower is not None:
            out["lower"] = self.lower
        if self.alternate is not None:
            out["alternate"] = self.alternate
        return out


def _finish(entry: RestrictionEntry) -> RestrictionEntry:
    if entry.margin is not None and abs(entry.margin) < BOUNDARY_TOL:
        entry.warning = True
    return entry


def _lt(rid, lhs, rhs, note="", **kw) -> RestrictionEntry:
    margin = rhs - lhs
    return _finish(RestrictionEntry(rid, "<", lhs, rhs, margin > 0, margin, note, **kw))


def _ge(rid, lhs, rhs, note="", **kw) -> RestrictionEntry:
    margin = lhs - rhs
    return _finish(RestrictionEntry(rid, ">=", lhs, rhs, margin >= 0, margin, note, **kw))


def _between(rid, lower, value, upper, note="", **kw) -> RestrictionEntry:
    margin = min(value - lower, upper - value)
    return _finish(RestrictionEntry(rid, "lower < lhs < rhs", value, upper, margin > 0, margin, note, lower=lower, **kw))


def _undefined(rid, relation, note) -> RestrictionEntry:
    return RestrictionEntry(rid, relation, None, None, False, None, "undefined: " + note)


# required restrictions, then alternative groups of (selectors, conditions)
CASE_RULES: dict[CaseId, tuple[tuple[str, ...], tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]]] = {
    CaseId.EPS_GAMMA: (("eq2", "R1"), ()),
    CaseId.EPS_L: (("eq2",), ()),
    CaseId.GAMMA_L: (("eq2",), ()),
    CaseId.EPS_K: (
        ("R2", "R3", "R4"),
        ((("R5",), ("R6",)), (("R7",), ("R8",)), (("R9",), ())),
    ),
    CaseId.EPS_RHO: (("R2", "R17", "R12"), ()),
    CaseId.EPS_C: (("R13",), ((("R14",), ("R15",)), (("R16",), ("R17",)))),
    CaseId.GAMMA_K: (("R2", "R3", "R4"), ()),
    CaseId.GAMMA_RHO: (("R2", "R17", "R18"), ()),
    CaseId.GAMMA_C: (("R3", "R13", "R17"), ()),
    CaseId.L_K: (("R2",), ()),
    CaseId.L_RHO: (("R2", "R17"), ()),
    CaseId.L_C: (("R2", "R17"), ()),
    CaseId.K_RHO: (("R2",), ()),
    CaseId.K_C: (("R2", "R3", "R19"), ()),
    CaseId.RHO_C: (("R2", "R17"), ()),
}


def relevant_ids(case: CaseId) -> tuple[str, ...]:
    required, groups = CASE_RULES[case]
    ids = list(required)
    for selectors, conditions in groups:
        ids.extend(selectors)
        ids.extend(conditions)
    return tuple(dict.fromkeys(ids))


@dataclass
class RestrictionReport:
    case: CaseId
    entries: list[RestrictionEntry]
    feasible: bool
    groups: dict[str, bool] = field(default_factory=dict)
    active_group: str | None = None
    blamed: list[str] = field(default_factory=list)

    def __getitem__(self, rid: str) -> RestrictionEntry:
        for e in self.entries:
            if e.id == rid:
                return e
        raise KeyError(rid)

    def __contains__(self, rid: str) -> bool:
        return any(e.id == rid for e in self.entries)

    @property
    def warnings(self) -> list[str]:
        return [e.id for e in self.entries if e.warning]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "case": int(self.case),
            "feasible": self.feasible,
            "violated": list(self.blamed),
            "warnings": self.warnings,
            "entries": [e.to_dict() for e in self.entries],
        }
        if self.groups:
            out["groups"] = dict(self.groups)
            out["active_group"] = self.active_group
        return out


class _Data:
    """Lazily evaluated quantities shared by several restrictions."""

    def __init__(self, known: KnownData, given: Mapping[str, float]):
        self.known = known
        self.given = given
        self.P = face_factor(known)

    @cached_property
    def R(self):
        return latent_ratio(self.known, self.given)

    @cached_property
    def M(self):
        return flux_ratio(self.known, self.given)

    @cached_property
    def m(self):
        return mushy_ratio(self.known, self.given)

    @cached_property
    def K4(self):
        kn = self.known
        return kn.q0 * SQRT_PI / (kn.sigma * self.given["rho"] * self.given["c"] * kn.D_inf)

    @cached_property
    def K5(self):
        kn = self.known
        return kn.q0 * kn.sigma * SQRT_PI / (self.given["k"] * kn.D_inf)

    @cached_property
    def r17_bound(self):
        kn = self.known
        return 2.0 * kn.q0 * kn.sigma / (self.given["k"] * kn.D_inf)

    @cached_property
    def xi(self):
        g = self.given
        return self.known.sigma * math.sqrt(g["rho"] * g["c"] / g["k"])

    def root(self, rid):
        try:
            return solve_auxiliary_root(rid, self.known, self.given)
        except NoRoot:
            return None

    @cached_property
    def eta4(self):
        return self.root(AuxRoot.ETA4)

    @cached_property
    def f4_peak(self):
        return None if self.eta4 is None else f4(self.eta4, self.known, self.given)


def _eq2(d: _Data) -> RestrictionEntry:
    kn, g = d.known, d.given
    alpha = g["k"] / (g["rho"] * g["c"])
    lhs = erf(d.xi)
    rhs = g["k"] * kn.D_inf / (kn.q0 * math.sqrt(alpha * math.pi)) * d.P
    gap = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    ok = gap <= 1e-10 * scale
    margin = 1e-10 * scale - gap
    return RestrictionEntry("eq2", "=", lhs, rhs, ok, margin, "relative tolerance 1e-10")


def _r1(d):
    return _lt("R1", 0.0, d.R * math.exp(-d.xi * d.xi) - 1.0)


def _r2(d):
    return _lt("R2", 0.0, d.P)


def _r3(d):
    e = _lt("R3", 0.0, d.R - 1.0, note=DISCREPANCY_NOTE)
    e.alternate = {"reading": "0 < 1 - q0/(rho l sigma)", "rhs": 1.0 - d.R, "satisfied": 1.0 - d.R > 0}
    return e


def _sqrt_log_R(d):
    return math.sqrt(math.log(d.R)) if d.R > 1.0 else None


def _r4(d):
    x = _sqrt_log_R(d)
    if x is None:
        return _undefined("R4", "<", "q0/(rho l sigma) <= 1")
    return _lt("R4", d.P, d.K4 * g4(x))


def _peak_entry(rid, d):
    if d.f4_peak is None:
        return _undefined(rid, {"R5": ">", "R7": "=", "R9": "<"}[rid], "eta4 requires q0/(rho l sigma) > 1")
    gap = d.f4_peak - 1.0
    equal = abs(gap) <= EQUALITY_TOL
    if rid == "R5":
        ok, rel = gap > 0 and not equal, ">"
    elif rid == "R9":
        ok, rel = gap < 0 and not equal, "<"
    else:
        ok, rel = equal, "="
    note = f"eta4={d.eta4!r}; equality tolerance {EQUALITY_TOL}"
    e = RestrictionEntry(rid, rel, d.f4_peak, 1.0, ok, gap if rid != "R9" else -gap, note)
    return _finish(e)


def _r6(d):
    if d.f4_peak is None or d.f4_peak < 1.0 - EQUALITY_TOL:
        return _undefined("R6", "lhs < K g4(zeta1) or lhs > K g4(zeta2)", "f4(x) = 1 has no solution")
    z1, z2 = solve_auxiliary_root(AuxRoot.ZETA4_PAIR, d.known, d.given)
    lo, hi = d.K4 * g4(z1), d.K4 * g4(z2)
    margin = max(lo - d.P, d.P - hi)
    e = RestrictionEntry("R6", "lhs < lower or lhs > rhs", d.P, hi, margin > 0, margin,
                         f"zeta1={z1!r}, zeta2={z2!r}", lower=lo)
    return _finish(e)


def _r8(d):
    if d.eta4 is None:
        return _undefined("R8", "!=", "eta4 requires q0/(rho l sigma) > 1")
    rhs = d.K4 * g4(d.eta4)
    margin = abs(d.P - rhs)
    return _finish(RestrictionEntry("R8", "!=", d.P, rhs, margin > 0, margin))


def _r12(d):
    z1 = solve_auxiliary_root(AuxRoot.ZETA5_1, d.known, d.given)
    z2 = solve_auxiliary_root(AuxRoot.ZETA5_2, d.known, d.given)
    lower = d.K5 * g5(z1)
    upper = min(d.r17_bound, d.K5 * g5(z2))
    note = f"zeta1={z1!r} (f5=0), zeta2={z2!r} (f5=1); upper side uses g5(zeta2); " + DISCREPANCY_NOTE
    return _between("R12", lower, d.P, upper, note=note)


def _r13(d):
    x = _sqrt_log_R(d)
    if x is None:
        return _undefined("R13", "<", "q0/(rho l sigma) <= 1")
    e = _lt("R13", d.K5 * g5(x), d.P, note="evaluated with g5; " + DISCREPANCY_NOTE)
    try:
        alt_lhs = d.K5 * f5(x, d.known, d.given)
    except KeyError:
        e.alternate = {"reading": "f5", "evaluable": False, "reason": "f5 reads the unknown specific heat c"}
    else:
        e.alternate = {"reading": "f5", "evaluable": True, "lhs": alt_lhs, "satisfied": alt_lhs < d.P}
    return e


def _r14(d):
    return _ge("R14", d.R, d.m + 1.0)


def _r15(d):
    nu6 = aux_constants(d.known, d.given, ("nu6",))["nu6"]
    note = f"nu6={nu6!r}; evaluated with g5"
    if nu6 >= 1.0:
        bound = d.r17_bound  # g5(0+) = 2/sqrt(pi)
        note += "; nu6 >= 1 so the g5 term reduces to its limit at 0"
    else:
        bound = min(d.r17_bound, d.K5 * g5(math.sqrt(math.log(1.0 / nu6))))
    return _lt("R15", d.P, bound, note=note)


def _r16(d):
    return _between("R16", 1.0, d.R, d.m + 1.0)


def _r17(d):
    return _lt("R17", d.P, d.r17_bound)


def _r18(d):
    eta = solve_auxiliary_root(AuxRoot.ETA8_RECONCILED, d.known, d.given)
    rhs = d.P / d.K5
    e = _lt("R18", g5(eta), rhs, note=f"eta={eta!r} solves M exp(-x^2)/x^2 = 1; " + DISCREPANCY_NOTE)
    printed = solve_auxiliary_root(AuxRoot.ETA8, d.known, d.given)
    e.alternate = {"reading": "eta from M exp(-x^2)/x = 1", "eta": printed,
                   "lhs": g5(printed), "satisfied": g5(printed) < rhs}
    return e


def _r19(d):
    a14 = aux_constants(d.known, d.given, ("a14",))["a14"]
    e = _lt("R19", 2.0 / SQRT_PI, a14 * (d.R - 1.0),
            note="a14 (q0/(rho l sigma) - 1) > 2/sqrt(pi); " + DISCREPANCY_NOTE)
    eta = d.root(AuxRoot.ETA14)
    if eta is None:
        e.alternate = {"reading": "g14(eta) > h14(eta)", "evaluable": False}
    else:
        lhs, rhs = g14(eta, d.known, d.given), h14(eta)
        e.alternate = {"reading": "g14(eta) > h14(eta)", "eta": eta, "lhs": lhs, "rhs": rhs,
                       "satisfied": lhs > rhs}
    return e


_EVALUATORS = {
    "eq2": _eq2, "R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4,
    "R5": lambda d: _peak_entry("R5", d), "R6": _r6,
    "R7": lambda d: _peak_entry("R7", d), "R8": _r8,
    "R9": lambda d: _peak_entry("R9", d),
    "R12": _r12, "R13": _r13, "R14": _r14, "R15": _r15, "R16": _r16,
    "R17": _r17, "R18": _r18, "R19": _r19,
}


def audit_restrictions(scenario: Scenario, solution_hint=None) -> RestrictionReport:
    """Evaluate every restriction the scenario's case depends on.

    ``feasible`` is the case's logical condition: all required restrictions
    and, where the case has alternative groups, at least one complete group.
    ``blamed`` lists the restrictions responsible when it is False.
    ``solution_hint`` is accepted for interface symmetry and not consulted.
    """
    d = _Data(scenario.known, scenario.given)
    case = scenario.case
    entries = [_EVALUATORS[rid](d) for rid in relevant_ids(case)]
    by_id = {e.id: e for e in entries}
    required, groups = CASE_RULES[case]

    blamed = [rid for rid in required if not by_id[rid].satisfied]
    group_ok: dict[str, bool] = {}
    active = None
    if groups:
        for i, (selectors, conditions) in enumerate(groups, start=1):
            name = f"Group {i}"
            sel = all(by_id[r].satisfied for r in selectors)
            group_ok[name] = sel and all(by_id[r].satisfied for r in conditions)
            if sel and active is None:
                active = name
        if not any(group_ok.values()):
            if active is not None:
                idx = int(active.split()[1]) - 1
                blamed += [r for r in groups[idx][1] if not by_id[r].satisfied]
            else:
                for selectors, _ in groups:
                    blamed += [r for r in selectors if not by_id[r].satisfied]
    feasible = not blamed and (not groups or any(group_ok.values()))
    return RestrictionReport(case, entries, feasible, group_ok, active, list(dict.fromkeys(blamed)))


class Sufficiency(str, enum.Enum):
    SUFFICIENT = "Sufficient"
    NOT_SUFFICIENT = "NotSufficient"


@dataclass
class Case4Sufficiency:
    status: Sufficiency
    entries: list[RestrictionEntry]
    nu4: float | None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status.value, "nu4": self.nu4, "note": self.note,
                "entries": [e.to_dict() for e in self.entries]}


def check_case4_sufficient(scenario: Scenario) -> Case4Sufficiency:
    """Easier-to-check sufficient conditions for the (epsilon, k) case.

    Evaluates R3, R10 (with ``g4(sqrt(ln(1/nu4)))`` on the left) and R11.
    """
    if scenario.case is not CaseId.EPS_K:
        raise DomainError("sufficient-condition check applies to case 4 (epsilon, k) only")
    d = _Data(scenario.known, scenario.given)
    r3 = _r3(d)
    entries = [r3]
    try:
        nu4 = aux_constants(d.known, d.given, ("nu4",))["nu4"]
    except DomainError as exc:
        entries.append(_undefined("R10", "lower < lhs < rhs", str(exc)))
        entries.append(_undefined("R11", "<", str(exc)))
        return Case4Sufficiency(Sufficiency.NOT_SUFFICIENT, entries, None, str(exc))

    kn, g = d.known, d.given
    lnR = math.log(d.R)
    r11 = _lt("R11", 0.0, 2.0 * kn.q0 / (g["rho"] * g["gamma"] * g["c"] * kn.sigma) * lnR * (d.R - 1.0) - 1.0)
    note = ""
    if nu4 >= 1.0:
        r10 = _undefined("R10", "lower < lhs < rhs", f"nu4={nu4!r} >= 1")
        note = "nu4 >= 1; the sufficiency argument needs nu4 < 1"
    else:
        lower = d.K4 * g4(math.sqrt(math.log(1.0 / nu4)))
        upper = d.K4 * g4(math.sqrt(lnR))
        r10 = _between("R10", lower, d.P, upper, note="left side uses g4(sqrt(ln(1/nu4))); " + DISCREPANCY_NOTE)
    entries += [r10, r11]
    ok = all(e.satisfied for e in entries)
    status = Sufficiency.SUFFICIENT if ok else Sufficiency.NOT_SUFFICIENT
    return Case4Sufficiency(status, entries, nu4, note)
