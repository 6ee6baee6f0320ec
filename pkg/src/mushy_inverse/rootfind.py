"""Bracketed scalar root finding on the positive half-line.

``solve`` is Brent's method (inverse quadratic / secant steps guarded by
bisection).  Every accepted iterate keeps a sign change, so the returned
``bracket_width`` is an honest enclosure of the root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import MaxIterations, NoBracket, OverflowGuard

__all__ = [
    "Monotonicity",
    "RootProblem",
    "RootResult",
    "expand_bracket",
    "solve",
    "find_root",
]

_MAX_EXPANSIONS = 60


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RootProblem:
    """Scalar equation ``objective(x) = target`` for ``x > 0``."""

    objective: Callable[[float], float]
    target: float = 0.0
    monotonicity: Monotonicity = Monotonicity.UNKNOWN
    initial_bracket: tuple[float, float] = (1e-8, 1.0)
    tol_x: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        lo, hi = self.initial_bracket
        if not (0 < lo < hi):
            raise ValueError(f"initial bracket must satisfy 0 < lo < hi, got {self.initial_bracket}")
        if not self.tol_x > 0:
            raise ValueError("tol_x must be positive")

    def residual(self, x: float) -> float:
        return self.objective(x) - self.target

    @property
    def residual_bound(self) -> float:
        return max(10.0 * self.tol_x * abs(self.target), 1e-12)


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    bracket_width: float


def _straddles(fa: float, fb: float) -> bool:
    return fa * fb <= 0.0 or (fa < 0.0 < fb) or (fb < 0.0 < fa)


def expand_bracket(problem: RootProblem) -> tuple[float, float]:
    """Grow the initial bracket until ``objective - target`` changes sign.

    ``hi`` is doubled and ``lo`` halved, at most 60 times each.  When the
    monotonicity is declared only the side that can close the gap is moved.
    An ``OverflowGuard`` raised by the objective freezes that side.

    Raises:
        NoBracket: no sign change found within the expansion limits.
    """
    f = problem.residual
    lo, hi = problem.initial_bracket
    flo, fhi = f(lo), f(hi)
    if _straddles(flo, fhi):
        return lo, hi

    mono = problem.monotonicity
    grow_hi = grow_lo = True
    if mono is Monotonicity.INCREASING:
        # both values on the same side: below target -> move hi, above -> move lo
        grow_hi, grow_lo = fhi < 0, flo > 0
    elif mono is Monotonicity.DECREASING:
        grow_hi, grow_lo = fhi > 0, flo < 0

    n_hi = n_lo = 0
    while (grow_hi and n_hi < _MAX_EXPANSIONS) or (grow_lo and n_lo < _MAX_EXPANSIONS):
        if grow_hi and n_hi < _MAX_EXPANSIONS:
            n_hi += 1
            cand = 2.0 * hi
            try:
                fc = f(cand)
            except OverflowGuard:
                grow_hi = False
            else:
                if _straddles(fhi, fc):
                    return hi, cand
                hi, fhi = cand, fc
        if grow_lo and n_lo < _MAX_EXPANSIONS:
            n_lo += 1
            cand = 0.5 * lo
            try:
                fc = f(cand)
            except OverflowGuard:
                grow_lo = False
            else:
                if _straddles(fc, flo):
                    return cand, lo
                lo, flo = cand, fc
    raise NoBracket(
        f"no sign change of objective - {problem.target!r} on [{lo:.3g}, {hi:.3g}]"
    )


def solve(problem: RootProblem, bracket: tuple[float, float] | None = None) -> RootResult:
    """Refine a sign-changing bracket to a root.

    Stops once the enclosing bracket is narrower than ``tol_x * root`` and the
    residual meets ``RootProblem.residual_bound``, or when the bracket cannot
    shrink further in floating point.

    Raises:
        NoBracket: ``bracket`` (or the expanded initial one) has no sign change.
        MaxIterations: not converged after ``max_iter`` steps.
    """
    f = problem.residual
    a, b = bracket if bracket is not None else expand_bracket(problem)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return RootResult(a, fa, 0, 0.0)
    if fb == 0.0:
        return RootResult(b, fb, 0, 0.0)
    if not _straddles(fa, fb):
        raise NoBracket(f"f({a})={fa} and f({b})={fb} do not straddle the target")

    # b is the best estimate, [b, c] always brackets the root
    c, fc = a, fa
    d = e = b - a
    bound = problem.residual_bound
    for it in range(1, problem.max_iter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 0.5 * problem.tol_x * abs(b)
        m = 0.5 * (c - b)
        width = abs(c - b)
        if fb == 0.0:
            return RootResult(b, fb, it, 0.0)
        if abs(m) <= tol1 and abs(fb) <= bound:
            return RootResult(b, fb, it, width)
        if width <= 4.0 * math.ulp(b):
            # adjacent floats: no further refinement is representable
            return RootResult(b, fb, it, width)
        if abs(m) <= tol1:
            # width already met, residual not: plain bisection inside [b, c]
            a, fa = b, fb
            b = b + m
            fb = f(b)
            d = e = m
            continue
        step_floor = max(tol1, 2.0 * math.ulp(b))
        if abs(e) >= step_floor and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(step_floor * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b = b + d if abs(d) > step_floor else b + math.copysign(step_floor, m)
        fb = f(b)
    raise MaxIterations(f"no convergence after {problem.max_iter} iterations (x={b!r})")


def find_root(
    objective: Callable[[float], float],
    target: float = 0.0,
    monotonicity: Monotonicity = Monotonicity.UNKNOWN,
    bracket: tuple[float, float] = (1e-8, 1.0),
    tol_x: float = 1e-12,
) -> RootResult:
    """Convenience wrapper: build a ``RootProblem``, expand and solve."""
    problem = RootProblem(objective, target, monotonicity, bracket, tol_x)
    return solve(problem)
