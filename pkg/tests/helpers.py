"""Independent oracles and scenario utilities for the test suite."""

from __future__ import annotations

import dataclasses
import math

import mpmath

from mushy_inverse.cases import CaseId, Scenario, audit_restrictions
from mushy_inverse.model import KnownData, ThermalCoefficients
from mushy_inverse.synth import construct, rng, scenario_for

mpmath.mp.dps = 60


def erf_series(x) -> tuple[float, float]:
    """Maclaurin series for erf at 60 digits.

    Returns ``(value, bound)`` where ``bound`` is the first omitted term,
    which bounds the truncation error of this alternating series once the
    terms decrease.
    """
    x = mpmath.mpf(x)
    total = mpmath.mpf(0)
    n = 0
    term = x
    while True:
        t = term / (2 * n + 1)
        if n >= 20 and abs(t) < mpmath.mpf(10) ** -40:
            break
        total += t
        n += 1
        term = -term * x * x / n
    return float(2 / mpmath.sqrt(mpmath.pi) * total), float(abs(t))


def erfc_asymptotic(x, terms: int = 20) -> float:
    """``exp(-x^2)/(x sqrt(pi)) * sum (-1)^n (2n-1)!! / (2x^2)^n``; for x = 10 the
    first omitted term is far below 1e-20 relative."""
    x = mpmath.mpf(x)
    s = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for n in range(terms):
        s += term
        term *= -(2 * n + 1) / (2 * x * x)
    return float(mpmath.exp(-x * x) / (x * mpmath.sqrt(mpmath.pi)) * s)


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def with_face(known: KnownData, P: float, D_inf: float | None = None) -> KnownData:
    """Same data with ``1 - q0/(h0 D_inf) = P``, optionally at a new ``D_inf``."""
    D = known.D_inf if D_inf is None else D_inf
    return dataclasses.replace(known, D_inf=D, h0=known.q0 / (D * (1.0 - P)))


def with_given(s: Scenario, **changes) -> Scenario:
    return Scenario(s.known, {**s.given, **changes}, s.case)


def with_known(s: Scenario, known: KnownData) -> Scenario:
    return Scenario(known, dict(s.given), s.case)


def find_scenario(case: CaseId, predicate, seed: int = 0, limit: int = 5000) -> Scenario:
    """First forward-constructed scenario whose audit satisfies ``predicate``."""
    r = rng(seed)
    for _ in range(limit):
        s = scenario_for(construct(r), case)
        if predicate(audit_restrictions(s)):
            return s
    raise LookupError(f"no scenario for case {int(case)} within {limit} draws")


DESK_KNOWN = KnownData(q0=1.0, h0=1.0, D_inf=2.0, sigma=0.5)
DESK_COEFFS = ThermalCoefficients(l=1.0, k=1.0, rho=1.0, c=1.0, epsilon=0.5, gamma=0.1)
