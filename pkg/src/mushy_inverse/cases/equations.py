"""Scalar equations for the similarity parameter and the auxiliary roots.

Each ``*_problem`` builder returns a :class:`RootProblem` whose objective is
strictly monotone on the positive reals (or on the stated sub-interval), so a
single sign change is guaranteed when the data admit a root.
"""

from __future__ import annotations

import enum
import math
from typing import Mapping

from ..errors import NoBracket, NoRoot
from ..model import (
    SQRT_PI,
    KnownData,
    aux_constants,
    f4,
    face_factor,
    flux_ratio,
    g4,
    g5,
    g13,
    h13,
    latent_ratio,
    mushy_ratio,
)
from ..rootfind import Monotonicity, RootProblem, RootResult, solve
from ..specfun import exp_sq

__all__ = [
    "XiEquation",
    "AuxRoot",
    "xi_problem",
    "solve_xi",
    "aux_root_problem",
    "solve_auxiliary_root",
    "EQUALITY_TOL",
]

EQUALITY_TOL = 1e-9
_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_TINY = 1e-12


class XiEquation(str, enum.Enum):
    E4 = "E4"
    E5 = "E5"
    E13 = "E13"
    E14 = "E14"


class AuxRoot(str, enum.Enum):
    ETA4 = "eta4"
    ZETA4_PAIR = "zeta4_pair"
    ETA5 = "eta5"
    ZETA5_1 = "zeta5_1"
    ZETA5_2 = "zeta5_2"
    ETA8 = "eta8"
    ETA8_RECONCILED = "eta8_reconciled"
    ETA14 = "eta14"


def xi_problem(eq_id, known: KnownData, given: Mapping[str, float], tol_x: float = 1e-12) -> RootProblem:
    """Root problem for the similarity parameter ``xi``.

    E4:  ``x erf(x) = sigma rho c D P / (q0 sqrt(pi))``
    E5:  ``erf(x)/x = k D P / (q0 sigma sqrt(pi))``
    E13: ``(c D P / (l sqrt(pi))) g13(x) / h13(x) = 1``
    E14: ``exp(x^2) erf(x)/x - a14 R exp(-x^2) = -a14``

    with ``P = 1 - q0/(h0 D)`` and ``R = q0/(rho l sigma)``.

    Raises:
        NoBracket: ``P <= 0``; none of the equations has a positive root then.
    """
    eq = XiEquation(eq_id)
    P = face_factor(known)
    if not P > 0:
        raise NoBracket(f"{eq.value} has no positive root: 1 - q0/(h0 D_inf) = {P!r} <= 0")
    q0, D, s = known.q0, known.D_inf, known.sigma

    if eq is XiEquation.E4:
        target = s * given["rho"] * given["c"] * D * P / (q0 * SQRT_PI)
        return RootProblem(g4, target, Monotonicity.INCREASING, tol_x=tol_x)
    if eq is XiEquation.E5:
        target = given["k"] * D * P / (q0 * s * SQRT_PI)
        return RootProblem(g5, target, Monotonicity.DECREASING, tol_x=tol_x)
    if eq is XiEquation.E13:
        ratio = given["c"] * D * P / (given["l"] * SQRT_PI)

        def e13(x: float) -> float:
            return ratio * g13(x) / h13(x, known, given)

        return RootProblem(e13, 1.0, Monotonicity.DECREASING, tol_x=tol_x)

    a14 = aux_constants(known, given, ("a14",))["a14"]
    R = latent_ratio(known, given)

    def e14(x: float) -> float:
        return exp_sq(x) * g5(x) - a14 * R * math.exp(-x * x)

    return RootProblem(e14, -a14, Monotonicity.INCREASING, tol_x=tol_x)


def solve_xi(eq_id, known: KnownData, given: Mapping[str, float], tol_x: float = 1e-12) -> RootResult:
    return solve(xi_problem(eq_id, known, given, tol_x))


def _eta4_objective(R: float):
    def h(x: float) -> float:
        return R * (1.0 - 2.0 * x * x) - (1.0 - x * x) * exp_sq(x)

    return h


def _eta14_objective(R: float):
    def h(x: float) -> float:
        return R * (1.0 - 2.0 * x * x) - exp_sq(x)

    return h


def aux_root_problem(root_id, known: KnownData, given: Mapping[str, float], tol_x: float = 1e-12):
    """Return ``(problem, bracket)``; ``bracket`` is None when it must be expanded.

    Not defined for ``zeta4_pair``, which is assembled from two solves.
    """
    rid = AuxRoot(root_id)
    if rid in (AuxRoot.ETA4, AuxRoot.ETA14):
        R = latent_ratio(known, given)
        if not R > 1.0:
            raise NoRoot(f"{rid.value} needs q0/(rho l sigma) > 1, got {R!r}")
        obj = _eta4_objective(R) if rid is AuxRoot.ETA4 else _eta14_objective(R)
        # the root of interest lies in (0, 1/sqrt 2), where the left side is positive
        problem = RootProblem(obj, 0.0, Monotonicity.DECREASING, (_TINY, _INV_SQRT2), tol_x)
        return problem, (_TINY, _INV_SQRT2)

    M = flux_ratio(known, given)
    if rid is AuxRoot.ETA5:
        # stationary point of f5: x^2 = M (2 + 1/x^2) exp(-x^2)
        def obj(x):
            return x * x - M * (2.0 + 1.0 / (x * x)) * math.exp(-x * x)

        return RootProblem(obj, 0.0, Monotonicity.INCREASING, tol_x=tol_x), None
    if rid in (AuxRoot.ZETA5_1, AuxRoot.ETA8_RECONCILED):
        def obj(x):
            return x * x - M * math.exp(-x * x)

        return RootProblem(obj, 0.0, Monotonicity.INCREASING, tol_x=tol_x), None
    if rid is AuxRoot.ZETA5_2:
        m = mushy_ratio(known, given)

        def obj(x):
            return x * x * (m * exp_sq(x) + 1.0) - M * math.exp(-x * x)

        return RootProblem(obj, 0.0, Monotonicity.INCREASING, tol_x=tol_x), None
    if rid is AuxRoot.ETA8:
        def obj(x):
            return M * math.exp(-x * x) / x

        return RootProblem(obj, 1.0, Monotonicity.DECREASING, tol_x=tol_x), None
    raise ValueError(f"{rid.value} has no single root problem")


def _solve_aux(root_id, known, given, tol_x):
    problem, bracket = aux_root_problem(root_id, known, given, tol_x)
    try:
        return solve(problem, bracket).root
    except NoBracket as exc:
        raise NoRoot(f"{AuxRoot(root_id).value}: {exc}") from exc


def solve_auxiliary_root(root_id, known: KnownData, given: Mapping[str, float], tol_x: float = 1e-12):
    """Solve one of the auxiliary equations.

    ``zeta4_pair`` returns ``(zeta1, zeta2)`` with ``zeta1 <= zeta2``: the two
    solutions of ``f4(x) = 1`` on either side of the maximiser ``eta4``.  All
    other ids return a single float.

    Raises:
        NoRoot: the existence condition for the requested root fails.
    """
    rid = AuxRoot(root_id)
    if rid is not AuxRoot.ZETA4_PAIR:
        return _solve_aux(rid, known, given, tol_x)

    eta = _solve_aux(AuxRoot.ETA4, known, given, tol_x)
    peak = f4(eta, known, given)
    if peak < 1.0 - EQUALITY_TOL:
        raise NoRoot(f"f4 peaks at {peak!r} < 1; f4(x) = 1 has no solution")
    if abs(peak - 1.0) <= EQUALITY_TOL:
        return eta, eta
    x_pos = math.sqrt(math.log(latent_ratio(known, given)))

    def obj(x):
        return f4(x, known, given)

    left = RootProblem(obj, 1.0, Monotonicity.INCREASING, (_TINY, eta), tol_x)
    right = RootProblem(obj, 1.0, Monotonicity.DECREASING, (eta, x_pos), tol_x)
    return solve(left, (_TINY, eta)).root, solve(right, (eta, x_pos)).root
