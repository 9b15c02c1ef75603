"""Exact and floating scalars plus the slope polynomials and their positive roots.

Scalars are either stdlib rationals (arbitrary-precision, kept in lowest terms
with positive denominator by construction) or finite binary64 floats.
Arithmetic between two rationals stays rational; anything touching a float
becomes float, never the other way around, so exactness is visible in the type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Scalar = Union[Fraction, float]

__all__ = [
    "IntPolynomial",
    "Scalar",
    "as_scalar",
    "eval_slope_poly",
    "eval_slope_quotient",
    "is_exact",
    "minimal_slope",
    "minimal_slope_bracket",
    "scalar_from_str",
    "scalar_to_str",
    "slope_poly",
    "slope_poly_quotient",
]


def as_scalar(x) -> Scalar:
    """Coerce to a scalar: ints become exact rationals, floats must be finite."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"scalar must be finite, got {x!r}")
        return x
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def is_exact(x: Scalar) -> bool:
    """True for rational scalars, False for floating ones."""
    return isinstance(x, Fraction)


def scalar_to_str(x: Scalar) -> str:
    """Canonical text form: 'num/den' in lowest terms, or shortest round-trip decimal."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def scalar_from_str(text: str) -> Scalar:
    """Parse the canonical text form; a '/' marks an exact rational."""
    t = text.strip()
    if "/" in t:
        num, _, den = t.partition("/")
        return Fraction(int(num), int(den))
    return as_scalar(float(t))


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] multiplies x**i."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if not cs:
            cs = (0,)
        if len(cs) > 1 and cs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Scalar) -> Scalar:
        """Horner evaluation; exact when x is rational."""
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return as_scalar(acc)


def _require_odd(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer >= 3, got {p!r}")


def slope_poly(p: int) -> IntPolynomial:
    """X^p - 2 X^(p-2) - 1, whose unique positive root is the minimal constant
    slope achievable by a map of odd type p."""
    _require_odd(p)
    coeffs = [0] * (p + 1)
    coeffs[0] = -1
    coeffs[p - 2] = -2
    coeffs[p] = 1
    return IntPolynomial(tuple(coeffs))


def slope_poly_quotient(p: int) -> IntPolynomial:
    """The exact quotient slope_poly(p) / (X + 1):
    X^(p-1) - X^(p-2) - sum_{i=0}^{p-3} (-X)^i."""
    _require_odd(p)
    coeffs = [0] * p
    for i in range(p - 2):
        coeffs[i] = -((-1) ** i)
    coeffs[p - 2] = -1
    coeffs[p - 1] = 1
    return IntPolynomial(tuple(coeffs))


def eval_slope_poly(p: int, x: Scalar) -> Scalar:
    """Evaluate X^p - 2 X^(p-2) - 1; exact for rational x."""
    return slope_poly(p)(as_scalar(x))


def eval_slope_quotient(p: int, x: Scalar) -> Scalar:
    """Evaluate the quotient of slope_poly(p) by (X + 1); exact for rational x.

    Its sign at x tells whether x is below or above the minimal slope, which is
    what decides whether the middle tent block of the construction is present.
    """
    return slope_poly_quotient(p)(as_scalar(x))


def minimal_slope_bracket(p: int, tol: float = 1e-12) -> Tuple[float, float]:
    """Bisection bracket [lo, hi] around the positive root of slope_poly(p).

    Starts from [sqrt(2), 2], where the polynomial is -1 at the left end and
    2^(p-1) - 1 at the right end, and narrows until hi - lo <= tol while the
    sign change is preserved.
    """
    _require_odd(p)
    tol = float(tol)
    if not tol > 0:
        raise ValueError("tol must be positive")
    poly = slope_poly(p)
    lo, hi = math.sqrt(2.0), 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # ran out of float resolution
            break
        v = poly(mid)
        if v == 0.0:
            return (mid, mid)
        if v < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def minimal_slope(p: int, tol: float = 1e-12) -> float:
    """The unique positive root of slope_poly(p), to within tol.

    Always lies strictly between sqrt(2) and 2, and decreases toward sqrt(2)
    as p grows.
    """
    lo, hi = minimal_slope_bracket(p, tol)
    return 0.5 * (lo + hi)
