"""Physical data model and the closed-form similarity solution.

Units are SI with temperatures in degrees Celsius.  The solid occupies
``0 < x < s(t)``, the isothermal mushy zone ``s(t) < x < r(t)`` and the
liquid ``x > r(t)``; both non-solid regions sit at 0 degC.

Consistency of a full parameter set is expressed through two scalar
equations (latent-heat balance and convective face condition), exposed here
as :func:`residual_eq1` and :func:`residual_eq2`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Mapping, Union

from .errors import DomainError, MissingParameter
from .specfun import erf, exp_sq

__all__ = [
    "COEFFICIENT_NAMES",
    "KnownData",
    "ThermalCoefficients",
    "SimilaritySolution",
    "make_similarity",
    "temperature",
    "front_s",
    "front_r",
    "residual_eq1",
    "residual_eq2",
    "aux",
    "aux_constants",
    "AUX_FUNCTIONS",
    "f4", "g4", "f5", "g5", "f6", "g13", "h13", "g14", "h14",
    "flux_ratio",
    "face_factor",
    "latent_ratio",
    "mushy_ratio",
]

COEFFICIENT_NAMES = ("l", "k", "rho", "c", "epsilon", "gamma")
SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class KnownData:
    """Scalars that are always known.

    Attributes:
        q0: heat-flux coefficient, the face flux is ``q0/sqrt(t)`` [W s^1/2 m^-2]
        h0: heat-transfer coefficient at the face [W s^1/2 m^-2 degC^-1]
        D_inf: magnitude of the bulk temperature ``-D_inf`` [degC]
        sigma: solid front coefficient, ``s(t) = 2 sigma sqrt(t)`` [m s^-1/2]
    """

    q0: float
    h0: float
    D_inf: float
    sigma: float

    def __post_init__(self):
        for name in ("q0", "h0", "D_inf", "sigma"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"KnownData.{name} must be a finite positive number, got {v!r}")


def _check_coefficient(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise DomainError(f"{name} must be a finite number, got {value!r}")
    if name == "epsilon":
        if not 0.0 < value < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {value!r}")
    elif not value > 0.0:
        raise DomainError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ThermalCoefficients:
    """Material and mushy-zone coefficients.

    ``l`` latent heat [J/kg], ``k`` conductivity [W/(m degC)], ``rho`` density
    [kg/m^3], ``c`` specific heat [J/(kg degC)], ``epsilon`` fraction of the
    latent heat released at the solid front, ``gamma`` width-gradient constant
    of the mushy zone [degC].
    """

    l: float
    k: float
    rho: float
    c: float
    epsilon: float
    gamma: float

    def __post_init__(self):
        for name in COEFFICIENT_NAMES:
            _check_coefficient(name, getattr(self, name))

    @property
    def alpha(self) -> float:
        return self.k / (self.rho * self.c)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


Coefficients = Union[ThermalCoefficients, Mapping[str, float]]


def _get(coeffs: Coefficients, *names: str) -> tuple[float, ...]:
    src = coeffs.as_dict() if isinstance(coeffs, ThermalCoefficients) else coeffs
    missing = [n for n in names if n not in src]
    if missing:
        raise MissingParameter(f"missing coefficient(s): {', '.join(missing)}")
    return tuple(float(src[n]) for n in names)


@dataclass(frozen=True)
class SimilaritySolution:
    """State of ``T = A + B erf(x / (2 sqrt(alpha t)))`` and ``r = 2 mu sqrt(alpha t)``."""

    A: float
    B: float
    mu: float
    alpha: float
    xi: float


def make_similarity(known: KnownData, coeffs: ThermalCoefficients) -> SimilaritySolution:
    alpha = coeffs.alpha
    sqrt_alpha = math.sqrt(alpha)
    xi = known.sigma / sqrt_alpha
    B = known.q0 * math.sqrt(alpha * math.pi) / coeffs.k
    A = -(B * erf(xi))
    mu = coeffs.gamma * coeffs.k * exp_sq(xi) / (2.0 * known.q0 * sqrt_alpha) + xi
    return SimilaritySolution(A=A, B=B, mu=mu, alpha=alpha, xi=xi)


def front_s(known: KnownData, t: float) -> float:
    """Solid front ``s(t) = 2 sigma sqrt(t)``."""
    return 2.0 * known.sigma * math.sqrt(t)


def front_r(sol: SimilaritySolution, known: KnownData, t: float) -> float:
    """Liquid front ``r(t) = 2 mu sqrt(alpha t)``."""
    return 2.0 * sol.mu * math.sqrt(sol.alpha * t)


def temperature(sol: SimilaritySolution, known: KnownData, x: float, t: float) -> float:
    """Temperature in the solid region ``0 <= x <= s(t)``.

    The erf argument is written as ``xi * x / s(t)`` so that ``T(s(t), t)``
    evaluates to exactly zero.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    s = front_s(known, t)
    if not 0.0 <= x <= s:
        raise DomainError(f"x={x!r} outside the solid region [0, {s!r}]")
    return sol.A + sol.B * erf(sol.xi * (x / s))


# -- dimensionless groups ---------------------------------------------------

def face_factor(known: KnownData) -> float:
    """``1 - q0/(h0 D_inf)``; positive exactly when the face condition is attainable."""
    return 1.0 - known.q0 / (known.h0 * known.D_inf)


def latent_ratio(known: KnownData, coeffs: Coefficients) -> float:
    """``q0 / (rho l sigma)``."""
    rho, l = _get(coeffs, "rho", "l")
    return known.q0 / (rho * l * known.sigma)


def flux_ratio(known: KnownData, coeffs: Coefficients) -> float:
    """``q0 c sigma / (l k)``."""
    c, l, k = _get(coeffs, "c", "l", "k")
    return known.q0 * c * known.sigma / (l * k)


def mushy_ratio(known: KnownData, coeffs: Coefficients) -> float:
    """``gamma k / (2 q0 sigma)``."""
    gamma, k = _get(coeffs, "gamma", "k")
    return gamma * k / (2.0 * known.q0 * known.sigma)


# -- consistency residuals --------------------------------------------------

def residual_eq1(known: KnownData, coeffs: ThermalCoefficients) -> float:
    """Latent-heat balance at the solid front, normalised.

    Returns ``(q0/(rho l) - rhs) / rhs`` with
    ``rhs = [sigma + gamma k (1-eps) exp(xi^2) / (2 q0)] exp(xi^2)``, which is
    strictly positive for admissible coefficients.
    """
    e = exp_sq(known.sigma / math.sqrt(coeffs.alpha))
    rhs = (known.sigma + coeffs.gamma * coeffs.k * (1.0 - coeffs.epsilon) * e / (2.0 * known.q0)) * e
    lhs = known.q0 / (coeffs.rho * coeffs.l)
    return (lhs - rhs) / rhs


def residual_eq2(known: KnownData, coeffs: ThermalCoefficients) -> float:
    """``erf(xi) - k D_inf / (q0 sqrt(alpha pi)) * (1 - q0/(h0 D_inf))``."""
    alpha = coeffs.alpha
    xi = known.sigma / math.sqrt(alpha)
    rhs = coeffs.k * known.D_inf / (known.q0 * math.sqrt(alpha * math.pi)) * face_factor(known)
    return erf(xi) - rhs


# -- auxiliary functions ----------------------------------------------------

def g4(x: float) -> float:
    return x * erf(x)


def g5(x: float) -> float:
    return erf(x) / x


def f4(x: float, known: KnownData, coeffs: Coefficients) -> float:
    gamma, rho, c = _get(coeffs, "gamma", "rho", "c")
    R = latent_ratio(known, coeffs)
    e = math.exp(-x * x)
    return 2.0 * known.q0 / (gamma * rho * c * known.sigma) * (R * e - 1.0) * x * x * e


def f5(x: float, known: KnownData, coeffs: Coefficients) -> float:
    gamma, k = _get(coeffs, "gamma", "k")
    M = flux_ratio(known, coeffs)
    e = math.exp(-x * x)
    return 2.0 * known.q0 * known.sigma / (gamma * k) * (M * e / (x * x) - 1.0) * e


def f6(x: float, known: KnownData, coeffs: Coefficients) -> float:
    # includes the "-1" that back-substitution into the balance equation requires
    gamma, k = _get(coeffs, "gamma", "k")
    R = latent_ratio(known, coeffs)
    e = math.exp(-x * x)
    return 2.0 * known.q0 * known.sigma / (gamma * k) * (R * e - 1.0) * e


def g13(x: float) -> float:
    return math.exp(-x * x) / erf(x)


def h13(x: float, known: KnownData, coeffs: Coefficients) -> float:
    b13 = aux_constants(known, coeffs, ("b13",))["b13"]
    return x + b13 * exp_sq(x) * erf(x)


def g14(x: float, known: KnownData, coeffs: Coefficients) -> float:
    R = latent_ratio(known, coeffs)
    return (R * math.exp(-x * x) - 1.0) * x


def h14(x: float) -> float:
    return erf(x) * exp_sq(x)


AUX_FUNCTIONS = ("f4", "g4", "f5", "g5", "f6", "g13", "h13", "g14", "h14")
_NEEDS_DATA = {"f4": f4, "f5": f5, "f6": f6, "h13": h13, "g14": g14}
_PURE = {"g4": g4, "g5": g5, "g13": g13, "h14": h14}


def aux(fn_id: str, x: float, known: KnownData, coeffs: Coefficients) -> float:
    """Evaluate a named auxiliary function at ``x > 0``."""
    if not x > 0:
        raise DomainError(f"auxiliary functions are defined for x > 0, got {x!r}")
    if fn_id in _PURE:
        return _PURE[fn_id](x)
    if fn_id in _NEEDS_DATA:
        return _NEEDS_DATA[fn_id](x, known, coeffs)
    raise ValueError(f"unknown auxiliary function {fn_id!r}; expected one of {AUX_FUNCTIONS}")


def _a13(known, coeffs):
    c, l = _get(coeffs, "c", "l")
    P = face_factor(known)
    return 2.0 * c * known.D_inf / (l * SQRT_PI) * P * P


def _b13(known, coeffs):
    gamma, eps = _get(coeffs, "gamma", "epsilon")
    return gamma * SQRT_PI * (1.0 - eps) / (2.0 * known.D_inf * face_factor(known))


def _c13(known, coeffs):
    return 2.0 * face_factor(known)


def _a14(known, coeffs):
    gamma, eps = _get(coeffs, "gamma", "epsilon")
    return 2.0 * known.D_inf / (gamma * SQRT_PI * (1.0 - eps)) * face_factor(known)


def _nu4(known, coeffs):
    gamma, c, l = _get(coeffs, "gamma", "c", "l")
    R = latent_ratio(known, coeffs)
    if not R > 1.0:
        raise DomainError(f"nu4 needs q0/(rho l sigma) > 1, got {R!r}")
    lnR = math.log(R)
    # positive root of a4 y^2 - b4 y - 1; the R11 condition is exactly nu4 < 1
    return (1.0 + math.sqrt(1.0 + 2.0 * gamma * c / (l * lnR))) / (2.0 * R)


def _nu6(known, coeffs):
    gamma, k, rho, l = _get(coeffs, "gamma", "k", "rho", "l")
    s = known.sigma
    return rho * l * s / (2.0 * known.q0) * (1.0 + math.sqrt(1.0 + 2.0 * gamma * k / (s * s * rho * l)))


_CONSTANTS = {"a13": _a13, "b13": _b13, "c13": _c13, "a14": _a14, "nu4": _nu4, "nu6": _nu6}


def aux_constants(
    known: KnownData, coeffs: Coefficients, names: tuple[str, ...] | None = None
) -> dict[str, float]:
    """Evaluate the named constants (default: all of them).

    Raises:
        MissingParameter: a requested constant reads an absent coefficient.
        DomainError: ``nu4`` requested with ``q0/(rho l sigma) <= 1``.
    """
    names = tuple(_CONSTANTS) if names is None else names
    out = {}
    for name in names:
        try:
            fn = _CONSTANTS[name]
        except KeyError:
            raise ValueError(f"unknown constant {name!r}") from None
        out[name] = fn(known, coeffs)
    return out
