"""Error function kernels built only on ``math.exp``.

For ``|x| < SWITCH`` erf is summed from the series

    erf(x) = 2/sqrt(pi) * x * exp(-x**2) * sum_n (2 x**2)**n / (1*3*...*(2n+1))

whose terms are all positive, so there is no cancellation.  Beyond the
switch point erfc is evaluated directly from its continued fraction and
erf is obtained as ``1 - erfc``; erfc itself never goes through ``1 - erf``
there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OverflowGuard

__all__ = ["Accuracy", "DEFAULT_ACCURACY", "erf", "erfc", "exp_sq", "EXP_SQ_LIMIT", "SWITCH"]

SWITCH = 2.5
EXP_SQ_LIMIT = 700.0
_CF_TERMS = 60
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class Accuracy:
    abs_tol: float = 1e-15
    rel_tol: float = 1e-14

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("Accuracy tolerances must be positive")


DEFAULT_ACCURACY = Accuracy()


def _erf_series(x: float) -> float:
    # valid for x >= 0, used below SWITCH
    two_x2 = 2.0 * x * x
    term = 1.0
    total = 1.0
    n = 0
    while term > 1e-17 * total:
        n += 1
        term *= two_x2 / (2 * n + 1)
        total += term
    return _TWO_OVER_SQRT_PI * x * math.exp(-x * x) * total


def _erfc_cf(x: float) -> float:
    # x >= SWITCH; backward evaluation of
    # erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    f = x
    for n in range(_CF_TERMS, 0, -1):
        f = x + 0.5 * n / f
    return math.exp(-x * x) / (_SQRT_PI * f)


def erf(x: float) -> float:
    """Error function of a finite real argument."""
    if x == 0.0:
        return x  # keeps the sign of -0.0
    ax = abs(x)
    if ax < SWITCH:
        val = _erf_series(ax)
    else:
        val = 1.0 - _erfc_cf(ax)
    return -val if x < 0 else val


def erfc(x: float) -> float:
    """Complementary error function ``1 - erf(x)``."""
    ax = abs(x)
    if ax < SWITCH:
        return 1.0 - erf(x)
    tail = _erfc_cf(ax)
    return 2.0 - tail if x < 0 else tail


def exp_sq(x: float) -> float:
    """Return ``exp(x**2)``.

    Raises:
        OverflowGuard: if ``x**2`` exceeds ``EXP_SQ_LIMIT``.
    """
    x2 = x * x
    if x2 > EXP_SQ_LIMIT:
        raise OverflowGuard(f"exp(x^2) with x^2={x2:.6g} exceeds guard {EXP_SQ_LIMIT}")
    return math.exp(x2)
