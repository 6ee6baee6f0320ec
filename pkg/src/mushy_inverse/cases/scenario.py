"""Case identifiers and the scenario container."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from ..errors import DomainError
from ..model import COEFFICIENT_NAMES, KnownData, _check_coefficient

__all__ = ["CaseId", "Scenario", "UNKNOWNS", "parse_case"]


class CaseId(enum.IntEnum):
    EPS_GAMMA = 1
    EPS_L = 2
    GAMMA_L = 3
    EPS_K = 4
    EPS_RHO = 5
    EPS_C = 6
    GAMMA_K = 7
    GAMMA_RHO = 8
    GAMMA_C = 9
    L_K = 10
    L_RHO = 11
    L_C = 12
    K_RHO = 13
    K_C = 14
    RHO_C = 15

    @property
    def unknowns(self) -> tuple[str, str]:
        return UNKNOWNS[self]

    @property
    def given_names(self) -> tuple[str, ...]:
        return tuple(n for n in COEFFICIENT_NAMES if n not in UNKNOWNS[self])

    @property
    def is_family(self) -> bool:
        return self <= 3


UNKNOWNS = {
    CaseId.EPS_GAMMA: ("epsilon", "gamma"),
    CaseId.EPS_L: ("epsilon", "l"),
    CaseId.GAMMA_L: ("gamma", "l"),
    CaseId.EPS_K: ("epsilon", "k"),
    CaseId.EPS_RHO: ("epsilon", "rho"),
    CaseId.EPS_C: ("epsilon", "c"),
    CaseId.GAMMA_K: ("gamma", "k"),
    CaseId.GAMMA_RHO: ("gamma", "rho"),
    CaseId.GAMMA_C: ("gamma", "c"),
    CaseId.L_K: ("l", "k"),
    CaseId.L_RHO: ("l", "rho"),
    CaseId.L_C: ("l", "c"),
    CaseId.K_RHO: ("k", "rho"),
    CaseId.K_C: ("k", "c"),
    CaseId.RHO_C: ("rho", "c"),
}

_ALIASES = {"eps": "epsilon", "ε": "epsilon", "γ": "gamma", "ρ": "rho"}


def parse_case(value) -> CaseId:
    """Accept ``7``, ``"7"``, ``"gamma,k"`` or ``"k,gamma"``."""
    if isinstance(value, bool):
        raise DomainError(f"invalid case {value!r}")
    if isinstance(value, int):
        try:
            return CaseId(value)
        except ValueError:
            raise DomainError(f"case must be in 1..15, got {value}") from None
    if isinstance(value, str):
        text = value.strip()
        if text.isdigit():
            return parse_case(int(text))
        names = frozenset(_ALIASES.get(p.strip(), p.strip()) for p in text.split(","))
        for case, pair in UNKNOWNS.items():
            if frozenset(pair) == names:
                return case
    raise DomainError(f"unrecognised case {value!r}")


@dataclass(frozen=True)
class Scenario:
    """Known data plus the four coefficients that are not being determined."""

    known: KnownData
    given: Mapping[str, float]
    case: CaseId

    def __post_init__(self):
        case = parse_case(int(self.case)) if not isinstance(self.case, CaseId) else self.case
        object.__setattr__(self, "case", case)
        expected = set(case.given_names)
        got = set(self.given)
        if got != expected:
            extra = sorted(got - expected)
            missing = sorted(expected - got)
            raise DomainError(
                f"case {int(case)} needs given={sorted(expected)}"
                + (f"; unexpected {extra}" if extra else "")
                + (f"; missing {missing}" if missing else "")
            )
        for name, value in self.given.items():
            _check_coefficient(name, value)
        frozen = MappingProxyType({n: float(self.given[n]) for n in case.given_names})
        object.__setattr__(self, "given", frozen)
