"""Independent checks of a reconstructed solution.

:func:`verify` re-evaluates the temperature from the raw solution state with
``scipy.special.erf`` and checks the heat equation and every boundary and
interface condition by finite differences.  Nothing here reuses the formula
code in :mod:`mushy_inverse.model`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import erf as _erf

from .errors import DomainError
from .model import KnownData, SimilaritySolution, ThermalCoefficients

__all__ = ["GridSpec", "VerificationReport", "verify", "pde_residual_max", "scan_roots", "BOUNDARY_THRESHOLD", "MIN_ORDER"]

BOUNDARY_THRESHOLD = 1e-6
MIN_ORDER = 1.9
# boundary derivative step, as a fraction of the diffusion length 2 sqrt(alpha t)
_BOUNDARY_STEP = 1e-3
# fourth-order one-sided first derivative, points x0, x0 -+ h, ..., x0 -+ 4h
_ONE_SIDED = np.array([25.0, -48.0, 36.0, -16.0, 3.0]) / 12.0


@dataclass(frozen=True)
class GridSpec:
    nx: int = 400
    nt: int = 400
    t_range: tuple[float, float] = (1.0, 2.0)
    fd_order: int = 2

    def __post_init__(self):
        t0, t1 = self.t_range
        if self.nx < 16 or self.nt < 16:
            raise DomainError("grid needs nx, nt >= 16")
        if not (0 < t0 < t1):
            raise DomainError(f"t_range must satisfy 0 < t0 < t1, got {self.t_range}")
        if (t1 - t0) / self.nt >= t0:
            raise DomainError("time step must be smaller than t0 (centred differences reach t0 - dt)")
        if self.fd_order != 2:
            raise DomainError("only second-order differences are supported")

    def refined(self) -> "GridSpec":
        return GridSpec(2 * self.nx, 2 * self.nt, self.t_range, self.fd_order)


@dataclass(frozen=True)
class VerificationReport:
    pde_residual_max: float
    pde_residual_refined: float
    pde_order: float
    cond2_max: float
    cond3_rel: float
    cond4_rel: float
    cond6_rel: float
    cond7_rel: float
    passed: bool

    @property
    def refinement_ratio(self) -> float:
        return self.pde_residual_max / self.pde_residual_refined

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _temp(sol: SimilaritySolution, x, t):
    return sol.A + sol.B * _erf(x / (2.0 * np.sqrt(sol.alpha * t)))


def pde_residual_max(sol: SimilaritySolution, known: KnownData, coeffs: ThermalCoefficients, nx: int, nt: int,
                     t_range: tuple[float, float]) -> float:
    """Max of ``|rho c T_t - k T_xx|`` over interior grid points, scaled by ``rho c |A| / t0``."""
    t0, t1 = t_range
    dt = (t1 - t0) / nt
    t = t0 + dt * np.arange(nt + 1)
    dx = 2.0 * known.sigma * np.sqrt(t) / nx
    i = np.arange(1, nx)
    x = dx[:, None] * i[None, :]
    tt = t[:, None]
    T = _temp(sol, x, tt)
    T_t = (_temp(sol, x, tt + dt) - _temp(sol, x, tt - dt)) / (2.0 * dt)
    d2 = dx[:, None] ** 2
    T_xx = (_temp(sol, x + dx[:, None], tt) - 2.0 * T + _temp(sol, x - dx[:, None], tt)) / d2
    rc = coeffs.rho * coeffs.c
    res = rc * T_t - coeffs.k * T_xx
    return float(np.max(np.abs(res)) / (rc * abs(sol.A) / t0))


def _dx_one_sided(sol, x0, t, h, direction):
    pts = x0 + direction * h * np.arange(5)[:, None]
    vals = _temp(sol, pts, t)
    return -direction * (_ONE_SIDED[:, None] * vals).sum(axis=0) / h


def verify(sol: SimilaritySolution, known: KnownData, coeffs: ThermalCoefficients,
           grid: GridSpec | None = None) -> VerificationReport:
    """Check the heat equation, interface conditions and both face conditions.

    The PDE check passes when halving the grid spacing shrinks the residual at
    an observed order of at least ``MIN_ORDER``; the boundary checks pass when
    every relative error is below ``BOUNDARY_THRESHOLD``.
    """
    grid = grid or GridSpec()
    fine = grid.refined()
    r_coarse = pde_residual_max(sol, known, coeffs, grid.nx, grid.nt, grid.t_range)
    r_fine = pde_residual_max(sol, known, coeffs, fine.nx, fine.nt, fine.t_range)
    order = math.log2(r_coarse / r_fine) if r_fine > 0 and r_coarse > 0 else 0.0

    t0, t1 = grid.t_range
    t = np.linspace(t0, t1, grid.nt + 1)
    sqt = np.sqrt(t)
    s = 2.0 * known.sigma * sqt
    r = 2.0 * sol.mu * np.sqrt(sol.alpha * t)
    h = _BOUNDARY_STEP * np.minimum(2.0 * np.sqrt(sol.alpha * t), s / 4.0)

    Tx_s = _dx_one_sided(sol, s, t, h, -1.0)
    Tx_0 = _dx_one_sided(sol, np.zeros_like(t), t, h, 1.0)
    T_s = _temp(sol, s, t)
    T_0 = _temp(sol, np.zeros_like(t), t)
    k, rho, l, eps, gamma = coeffs.k, coeffs.rho, coeffs.l, coeffs.epsilon, coeffs.gamma
    s_dot = known.sigma / sqt
    r_dot = sol.mu * math.sqrt(sol.alpha) / sqt
    flux = known.q0 / sqt

    cond2 = float(np.max(np.abs(T_s)) / abs(sol.A))
    latent = rho * l * (eps * s_dot + (1.0 - eps) * r_dot)
    cond3 = float(np.max(np.abs(k * Tx_s - latent) / np.abs(latent)))
    cond4 = float(np.max(np.abs(Tx_s * (r - s) - gamma)) / gamma)
    cond6 = float(np.max(np.abs(k * Tx_0 - flux) / flux))
    cond7 = float(np.max(np.abs(k * Tx_0 - known.h0 / sqt * (T_0 + known.D_inf)) / flux))

    ok = order >= MIN_ORDER and max(cond2, cond3, cond4, cond6, cond7) <= BOUNDARY_THRESHOLD
    return VerificationReport(r_coarse, r_fine, order, cond2, cond3, cond4, cond6, cond7, bool(ok))


def scan_roots(objective: Callable[[float], float], interval: tuple[float, float], n: int) -> list[tuple[float, float]]:
    """Sub-intervals of a uniform ``n``-partition on which ``objective`` changes sign.

    A value of exactly zero at a node is attributed to the sub-interval ending
    there, so an isolated zero is reported once.
    """
    if n < 100:
        raise ValueError("scan_roots needs n >= 100")
    lo, hi = interval
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    xs[-1] = hi
    vals = [objective(x) for x in xs]
    out = []
    for i in range(n):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            continue
        if b == 0.0 or (a < 0.0) != (b < 0.0):
            out.append((xs[i], xs[i + 1]))
    return out
