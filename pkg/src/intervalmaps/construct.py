"""Builders for the piecewise-linear maps of prescribed type and slope.

stefan_map gives the classical minimal-entropy model of odd type p on
[0, 2n]. odd_type_map builds, for any slope >= the minimal one, a
constant-slope map on [0, 1] of odd type p and entropy log(slope): the
falling segment through the periodic orbit, a block of full tents of summit
height x_{p-4} plus one shorter cap tent, and a rising ramp from t to 1.
square_root doubles the type and halves the entropy; typed_map composes the
two to reach type 2^d * p.

Everything is exact when the slope is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .kernel import (
    Scalar,
    as_scalar,
    eval_slope_poly,
    is_exact,
    minimal_slope,
    scalar_to_str,
)
from .plmap import Interval, PLMap

__all__ = [
    "ConstructedMap",
    "ConstructionParams",
    "SlopeBelowMinimumError",
    "odd_type_map",
    "orbit_and_t",
    "parse_slope_text",
    "square_root",
    "stefan_map",
    "typed_map",
]


def _require_odd(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer >= 3, got {p!r}")


class SlopeBelowMinimumError(ValueError):
    """Requested slope is below the minimal admissible slope for the type."""

    def __init__(self, p: int, slope: Scalar):
        self.p = p
        self.slope = slope
        self.minimum = minimal_slope(p)
        super().__init__(
            f"slope {scalar_to_str(as_scalar(slope))} is below the minimal "
            f"admissible slope for odd type {p}: {self.minimum:.12f}"
        )


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters (p, doublings, slope, tol) for a type 2^d * p build.

    tol only matters in floating mode, where it decides the degenerate
    collapse of the middle block; rational slopes are validated exactly.
    """

    p: int
    doublings: int = 0
    slope: Scalar = 2
    tol: float = 1e-9

    def __post_init__(self):
        _require_odd(self.p)
        if not isinstance(self.doublings, int) or self.doublings < 0:
            raise ValueError(f"doublings must be a nonnegative integer, got {self.doublings!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        s = as_scalar(self.slope)
        object.__setattr__(self, "slope", s)
        val = eval_slope_poly(self.p, s)
        ok = val >= 0 if is_exact(s) else val >= -self.tol
        if not ok:
            raise SlopeBelowMinimumError(self.p, s)

    @property
    def type_value(self) -> int:
        return (2 ** self.doublings) * self.p

    @property
    def target_entropy(self) -> float:
        return math.log(float(self.slope)) / (2 ** self.doublings)


@dataclass(frozen=True)
class ConstructedMap:
    """A built map together with its certification markers.

    orbit is the period-p cycle (orbit[i] maps to orbit[(i+1) % p]); t is the
    start of the final rising ramp; intervals holds the labeled
    pseudo-partition pieces I1..I(p-1), J1..Jk and the cap K when present.
    """

    map: PLMap
    orbit: Tuple[Scalar, ...]
    t: Scalar
    intervals: Dict[str, Interval]
    params: ConstructionParams
    full_tents: int       # number of full-height tents (k)
    middle_length: Scalar  # t - 1/slope (0 when the block is collapsed)

    def partition(self) -> List[Tuple[str, Interval]]:
        """The labeled pseudo-partition in spatial order."""
        return sorted(self.intervals.items(), key=lambda kv: (kv[1].lo, kv[1].hi))


def stefan_map(p: int) -> PLMap:
    """The classical map of odd type p = 2n+1 on [0, 2n].

    Anchored at f(0) = 2n, f(n-1) = n+1, f(n) = n-1, f(2n-1) = 0, f(2n) = n;
    for n = 1 the anchors coincide pairwise and only two pieces remain.
    """
    _require_odd(p)
    n = (p - 1) // 2
    anchors = [
        (0, 2 * n),
        (n - 1, n + 1),
        (n, n - 1),
        (2 * n - 1, 0),
        (2 * n, n),
    ]
    seen: Dict[int, int] = {}
    for x, v in anchors:
        if x in seen and seen[x] != v:
            raise RuntimeError("internal: inconsistent anchor collapse")
        seen[x] = v
    xs = sorted(seen)
    return PLMap(tuple(Fraction(x) for x in xs), tuple(Fraction(seen[x]) for x in xs))


def orbit_and_t(p: int, slope, tol: float = 1e-9) -> Tuple[Tuple[Scalar, ...], Scalar]:
    """Periodic orbit coordinates x_0..x_{p-1} and the ramp start t.

    For i <= p-4, x_i = ((-1)^i / s^(p-i-2)) * sum_{j=0}^{p-i-3} (-s)^j; the
    last three points are pinned at 1/s, 0, 1, and
    t = (s^(p-1) - sum_{j=0}^{p-3} (-s)^j) / s^(p-1).
    The returned values are re-verified against the defining relations
    x_{i+1} = 1 - s*x_i and x_0 = s*(1 - t) and against the required ordering;
    t < 1/s (beyond tol in floating mode) means the slope is below minimal.
    """
    _require_odd(p)
    s = as_scalar(slope)
    exact = is_exact(s)
    one: Scalar = Fraction(1) if exact else 1.0
    xs: List[Scalar] = [one] * p
    for i in range(p - 3):  # i = 0 .. p-4
        acc = sum((-s) ** j for j in range(p - i - 2))
        xs[i] = ((-1) ** i) * acc / s ** (p - i - 2)
    xs[p - 3] = one / s
    xs[p - 2] = one - one
    xs[p - 1] = one
    t = (s ** (p - 1) - sum((-s) ** j for j in range(p - 2))) / s ** (p - 1)

    gap = t - xs[p - 3]
    if (gap < 0) if exact else (gap < -tol):
        raise SlopeBelowMinimumError(p, s)

    _verify_orbit_system(p, s, xs, t, exact)
    return tuple(xs), t


def _verify_orbit_system(p, s, xs, t, exact) -> None:
    close = (lambda a, b: a == b) if exact else (lambda a, b: abs(a - b) <= 1e-9)
    for i in range(p - 3):
        if not close(xs[i + 1], 1 - s * xs[i]):
            raise RuntimeError(f"internal: orbit relation broken at i={i}")
    if not close(xs[0], s * (1 - t)):
        raise RuntimeError("internal: ramp relation broken")
    chain = list(range(p - 2, 0, -2)) + list(range(0, p - 2, 2))
    for a, b in zip(chain, chain[1:]):
        if not xs[a] < xs[b]:
            raise RuntimeError(f"internal: ordering broken between x_{a} and x_{b}")
    if not t < xs[p - 1]:
        raise RuntimeError("internal: t must stay below 1")


def odd_type_map(p: int, slope, tol: float = 1e-9) -> ConstructedMap:
    """Constant-slope map of odd type p on [0, 1] with entropy log(slope).

    Shape: slope -s from (0, 1) down to (1/s, 0); on [1/s, t] a block of k
    full tents of summit x_{p-4} (summit 1 when p = 3) plus a shorter cap
    tent on K; slope +s from (t, 0) up to (1, s*(1-t)). At the minimal slope
    t collapses onto 1/s and the middle block disappears.
    """
    xs, t = orbit_and_t(p, slope, tol)
    s = as_scalar(slope)
    exact = is_exact(s)
    zero: Scalar = Fraction(0) if exact else 0.0
    one: Scalar = Fraction(1) if exact else 1.0
    inv = one / s
    height = xs[p - 4] if p > 3 else one
    ell = t - inv

    collapsed = (ell <= 0) if exact else (ell <= tol)
    points: List[Tuple[Scalar, Scalar]] = [(zero, one), (inv, zero)]
    tents: Dict[str, Interval] = {}
    if collapsed:
        t_used: Scalar = inv
        k = 0
        ell_used: Scalar = zero
    else:
        t_used = t
        ell_used = ell
        k = math.floor((s * ell) / (2 * height))
        step = 2 * height / s
        left = inv
        for i in range(1, k + 1):
            right = inv + i * step
            points.append((left + step / 2, height))
            points.append((right, zero))
            tents[f"J{i}"] = Interval(left, right)
            left = right
        cap_width = t_used - left
        degenerate_cap = (cap_width == 0) if exact else (cap_width <= tol)
        if degenerate_cap:
            if k > 0 and points[-1][0] != t_used:
                # reuse t as the last tent's right edge (floating round-off)
                points[-1] = (t_used, zero)
                tents[f"J{k}"] = Interval(tents[f"J{k}"].lo, t_used)
        else:
            points.append((left + cap_width / 2, s * cap_width / 2))
            points.append((t_used, zero))
            tents["K"] = Interval(left, t_used)
    points.append((one, s * (one - t_used)))

    m = PLMap(tuple(x for x, _ in points), tuple(v for _, v in points))
    _verify_build(m, p, s, xs, tents, height, exact)

    intervals: Dict[str, Interval] = {}
    intervals["I1"] = _hull(xs[0], xs[1])
    for i in range(2, p - 1):
        intervals[f"I{i}"] = _hull(xs[i - 2], xs[i])
    intervals[f"I{p - 1}"] = Interval(t_used, one)
    intervals.update(tents)

    return ConstructedMap(
        map=m,
        orbit=tuple(xs),
        t=t_used,
        intervals=intervals,
        params=ConstructionParams(p, 0, s, tol),
        full_tents=k,
        middle_length=ell_used,
    )


def _hull(a: Scalar, b: Scalar) -> Interval:
    return Interval(min(a, b), max(a, b))


def _verify_build(m, p, s, xs, tents, height, exact) -> None:
    close = (lambda a, b: a == b) if exact else (lambda a, b: abs(a - b) <= 1e-9)
    report = m.is_constant_slope(s, 0 if exact else 1e-9)
    if not report:
        raise RuntimeError(f"internal: slopes {report.slopes} are not all +-{s}")
    for i in range(p):
        if not close(m.eval(xs[i]), xs[(i + 1) % p]):
            raise RuntimeError(f"internal: orbit point x_{i} does not map forward")
    for name, iv in tents.items():
        if not (close(m.eval(iv.lo), 0) and close(m.eval(iv.hi), 0)):
            raise RuntimeError(f"internal: tent {name} endpoints must map to 0")
        summit = m.eval(iv.mid)
        if name.startswith("J") and not close(summit, height):
            raise RuntimeError(f"internal: tent {name} summit must be {height}")
        if name == "K" and not summit < height:
            raise RuntimeError("internal: cap tent must stay below the full tents")


def square_root(f: PLMap, rescale: bool = True) -> PLMap:
    """Doubling construction on [0, 3b] for f on [0, b].

    g = f + 2b on [0, b], linear down to (2b, 0), then the translation
    x - 2b on [2b, 3b]; g has twice the type and half the entropy of f.
    With rescale the result is conjugated back onto [0, 1].
    """
    if f.breakpoints[0] != 0:
        raise ValueError("square root needs a domain starting at 0")
    b = f.breakpoints[-1]
    zero: Scalar = Fraction(0) if f.is_exact else 0.0
    bps = tuple(f.breakpoints) + (2 * b, 3 * b)
    vals = tuple(v + 2 * b for v in f.values) + (zero, b)
    g = PLMap(bps, vals)
    return g.rescaled_to_unit() if rescale else g


def typed_map(params: ConstructionParams, rescale: bool = True) -> PLMap:
    """Map of type 2^d * p and entropy log(slope)/2^d: the odd-type build
    followed by d square roots."""
    g = odd_type_map(params.p, params.slope, params.tol).map
    for _ in range(params.doublings):
        g = square_root(g, rescale=rescale)
    return g


def parse_slope_text(text: str, p: int, root_tol: float = 1e-12) -> Scalar:
    """Slope argument parser: 'a/b' and bare integers are exact rationals,
    decimals are binary64, and 'lambda_p' resolves the minimal slope for p
    numerically (to root_tol)."""
    t = text.strip()
    if t.lower() == "lambda_p":
        return minimal_slope(p, root_tol)
    if "/" in t:
        return Fraction(t)
    try:
        return Fraction(int(t))
    except ValueError:
        return as_scalar(float(t))
