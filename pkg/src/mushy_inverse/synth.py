"""Forward construction of exactly consistent scenarios.

Pick the similarity parameter and the material coefficients, then set
``sigma`` from ``xi``, the latent heat from the balance equation and the
face data (``D_inf``, ``h0``) from the convective condition.  Every step is
closed form, so the resulting data are consistent without any root solve.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cases.scenario import CaseId, Scenario
from .model import SQRT_PI, KnownData, ThermalCoefficients
from .specfun import erf

__all__ = ["Construction", "construct", "construct_from", "scenario_for", "rng"]


@dataclass(frozen=True)
class Construction:
    known: KnownData
    coeffs: ThermalCoefficients
    xi: float


def rng(seed: int) -> random.Random:
    return random.Random(seed)


def _log_uniform(r: random.Random, lo: float, hi: float) -> float:
    return math.exp(r.uniform(math.log(lo), math.log(hi)))


def construct_from(
    xi: float, k: float, rho: float, c: float, epsilon: float, gamma: float,
    q0: float, face: float,
) -> Construction:
    """Consistent data for given ``xi`` and ``face = 1 - q0/(h0 D_inf)`` in (0, 1)."""
    sigma = xi * math.sqrt(k / (rho * c))
    e = math.exp(xi * xi)
    l = q0 / (rho * (sigma + gamma * k * (1.0 - epsilon) * e / (2.0 * q0)) * e)
    # convective face condition: erf(xi) = k D P xi / (q0 sigma sqrt(pi))
    D = erf(xi) * q0 * sigma * SQRT_PI / (xi * k * face)
    h0 = q0 / (D * (1.0 - face))
    known = KnownData(q0=q0, h0=h0, D_inf=D, sigma=sigma)
    coeffs = ThermalCoefficients(l=l, k=k, rho=rho, c=c, epsilon=epsilon, gamma=gamma)
    return Construction(known, coeffs, xi)


def construct(r: random.Random) -> Construction:
    """Draw one consistent parameter set at desk scale."""
    xi = r.uniform(0.3, 1.5)
    k = _log_uniform(r, 0.5, 2.0)
    rho = _log_uniform(r, 0.5, 2.0)
    c = _log_uniform(r, 0.5, 2.0)
    epsilon = r.uniform(0.1, 0.9)
    gamma = _log_uniform(r, 0.1, 2.0)
    q0 = _log_uniform(r, 0.5, 2.0)
    face = r.uniform(0.2, 0.8)
    return construct_from(xi, k, rho, c, epsilon, gamma, q0, face)


def scenario_for(con: Construction, case: CaseId) -> Scenario:
    """Hide the case's unknown pair from a constructed parameter set."""
    full = con.coeffs.as_dict()
    given = {n: full[n] for n in case.given_names}
    return Scenario(con.known, given, case)
