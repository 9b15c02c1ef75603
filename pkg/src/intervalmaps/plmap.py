"""Continuous piecewise-linear self-maps of a compact interval.

Evaluation and interval images are exact over rationals. Iterates are analyzed
through their affine branches: every maximal interval on which f^n is affine,
carried with exact endpoints, slope, offset, and the itinerary of pieces it
traverses. One engine feeds both certifications: lap counts of iterates (hence
the entropy estimate) and enumeration of periodic points by per-branch
fixed-point solving.

All values here are immutable and all operations are pure; results are sorted
and deterministic.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

from .kernel import Scalar, as_scalar, is_exact

# Floating-mode tolerances; exact mode never consults them.
FLOAT_EPS = 1e-9        # domain slack when clamping float points / intervals
MERGE_TOL = 1e-12       # duplicate fixed points at shared branch endpoints
PERIOD_TOL = 1e-9       # least-period verification

DEFAULT_BRANCH_CAP = 10_000_000

__all__ = [
    "Branch",
    "BranchBudgetError",
    "DEFAULT_BRANCH_CAP",
    "FLOAT_EPS",
    "FixedPointContinuumError",
    "Interval",
    "PLMap",
    "SlopeReport",
]


class BranchBudgetError(RuntimeError):
    """Branch refinement exceeded its cap. Carries the completed prefix."""

    def __init__(self, cap: int, completed_n: int, laps):
        super().__init__(
            f"branch budget {cap} exceeded; largest completed iterate n={completed_n}"
        )
        self.cap = cap
        self.completed_n = completed_n
        self.laps = list(laps)


class FixedPointContinuumError(RuntimeError):
    """An iterate restricts to the identity on a whole subinterval, so its
    fixed points are not isolated."""


class _BranchCapHit(Exception):
    pass


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; degenerate (lo == hi) is allowed."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        lo, hi = as_scalar(self.lo), as_scalar(self.hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Scalar:
        return self.hi - self.lo

    @property
    def mid(self) -> Scalar:
        return (self.lo + self.hi) / 2

    def contains(self, x: Scalar, slack=0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def encloses(self, other: "Interval", slack=0) -> bool:
        """self covers other (up to slack on each side)."""
        return self.lo <= other.lo + slack and self.hi >= other.hi - slack

    def meets_interior(self, other: "Interval", margin=0) -> bool:
        """self intersects the open interior of other (margin shrinks it)."""
        return self.hi > other.lo + margin and self.lo < other.hi - margin

    def as_tuple(self) -> Tuple[Scalar, Scalar]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class Branch:
    """Affine restriction of an iterate f^q: x -> slope*x + offset on [lo, hi].

    itinerary lists the piece index of f used at each of the q steps.
    """

    lo: Scalar
    hi: Scalar
    slope: Scalar
    offset: Scalar
    itinerary: Tuple[int, ...]

    @property
    def domain(self) -> Interval:
        return Interval(self.lo, self.hi)

    def apply(self, x: Scalar) -> Scalar:
        return self.slope * x + self.offset

    def image_bounds(self) -> Tuple[Scalar, Scalar]:
        a = self.apply(self.lo)
        b = self.apply(self.hi)
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SlopeReport:
    """Per-piece slope check against a target absolute slope."""

    ok: bool
    target: Scalar
    tol: Scalar
    slopes: Tuple[Scalar, ...]
    deviations: Tuple[Scalar, ...]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PLMap:
    """Piecewise-linear self-map given by breakpoints and their values.

    The map is linear interpolation on each [b_j, b_{j+1}]. Validation
    requires strictly increasing breakpoints, values inside the domain
    (self-map), and no constant piece: plateaus would make lap semantics
    ambiguous and no construction here produces them.
    """

    breakpoints: Tuple[Scalar, ...]
    values: Tuple[Scalar, ...]

    def __post_init__(self):
        bps = tuple(as_scalar(b) for b in self.breakpoints)
        vals = tuple(as_scalar(v) for v in self.values)
        if len(bps) < 2:
            raise ValueError("a map needs at least two breakpoints")
        if len(bps) != len(vals):
            raise ValueError("breakpoints and values must have equal length")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValueError(f"breakpoints not strictly increasing at {a}, {b}")
        if min(vals) < bps[0] or max(vals) > bps[-1]:
            raise ValueError("values leave the domain; not a self-map")
        for j, (u, v) in enumerate(zip(vals, vals[1:])):
            if u == v:
                raise ValueError(f"constant piece at index {j} is not supported")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    # -- basic geometry ----------------------------------------------------

    @cached_property
    def slopes(self) -> Tuple[Scalar, ...]:
        bps, vals = self.breakpoints, self.values
        return tuple(
            (vals[j + 1] - vals[j]) / (bps[j + 1] - bps[j])
            for j in range(len(bps) - 1)
        )

    @cached_property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.breakpoints + self.values)

    @property
    def domain(self) -> Interval:
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    @property
    def piece_count(self) -> int:
        return len(self.breakpoints) - 1

    def _clamp(self, x: Scalar) -> Scalar:
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        if lo <= x <= hi:
            return x
        # floating round-off may push iterated points a hair outside
        if isinstance(x, float) or not self.is_exact:
            if x > hi and x - hi <= FLOAT_EPS:
                return hi
            if x < lo and lo - x <= FLOAT_EPS:
                return lo
        raise ValueError(f"point {x!r} outside domain [{lo}, {hi}]")

    def _piece_index(self, x: Scalar) -> int:
        j = bisect_right(self.breakpoints, x) - 1
        return min(max(j, 0), len(self.breakpoints) - 2)

    def eval(self, x: Scalar) -> Scalar:
        """Value at x; exact for rational inputs. Breakpoints return their
        stored value."""
        x = self._clamp(as_scalar(x))
        bps, vals = self.breakpoints, self.values
        j = bisect_right(bps, x) - 1
        if j >= len(bps) - 1:
            return vals[-1]
        if x == bps[j]:
            return vals[j]
        return vals[j] + (x - bps[j]) * self.slopes[j]

    def iterate(self, x: Scalar, n: int) -> Scalar:
        y = as_scalar(x)
        for _ in range(n):
            y = self.eval(y)
        return y

    def image(self, a: Interval) -> Interval:
        """Exact set-image of a closed subinterval: extrema over the endpoint
        values and the values at breakpoints interior to a."""
        lo = self._clamp(a.lo)
        hi = self._clamp(a.hi)
        vals = [self.eval(lo), self.eval(hi)]
        start = bisect_right(self.breakpoints, lo)
        end = bisect_left(self.breakpoints, hi)
        vals.extend(self.values[start:end])
        return Interval(min(vals), max(vals))

    # -- laps ----------------------------------------------------------------

    def lap_count(self) -> int:
        """Number of maximal monotonicity intervals; adjacent pieces with the
        same strict direction merge into one lap."""
        dirs = [s > 0 for s in self.slopes]
        return 1 + sum(1 for a, b in zip(dirs, dirs[1:]) if a != b)

    def is_constant_slope(self, target: Scalar, tol: Scalar = 0) -> SlopeReport:
        """Check that every piece has |slope| within tol of target."""
        target = as_scalar(target)
        devs = tuple(abs(abs(s) - target) for s in self.slopes)
        return SlopeReport(
            ok=all(d <= tol for d in devs),
            target=target,
            tol=tol,
            slopes=self.slopes,
            deviations=devs,
        )

    # -- branch engine ---------------------------------------------------------

    def _initial_branches(self) -> List[Branch]:
        bps, vals, slopes = self.breakpoints, self.values, self.slopes
        return [
            Branch(bps[j], bps[j + 1], slopes[j], vals[j] - slopes[j] * bps[j], (j,))
            for j in range(len(bps) - 1)
        ]

    def _refine_branches(self, branches: List[Branch], cap: int) -> List[Branch]:
        """One composition step: cut each affine branch of f^n at the preimages
        of breakpoints interior to its image, then compose with the piece of f
        each fragment lands in. Exact in rational mode."""
        bps, vals, slopes = self.breakpoints, self.values, self.slopes
        out: List[Branch] = []
        for br in branches:
            c, d = br.image_bounds()
            first = bisect_right(bps, c)
            last = bisect_left(bps, d)
            idx = range(first, last)
            if br.slope < 0:
                idx = reversed(idx)
            cuts = [br.lo]
            cuts.extend((bps[i] - br.offset) / br.slope for i in idx)
            cuts.append(br.hi)
            for k in range(len(cuts) - 1):
                lo, hi = cuts[k], cuts[k + 1]
                if not lo < hi:  # float collapse; nothing to keep
                    continue
                j = self._piece_index(br.apply((lo + hi) / 2))
                s = slopes[j]
                out.append(
                    Branch(
                        lo,
                        hi,
                        s * br.slope,
                        s * br.offset + vals[j] - s * bps[j],
                        br.itinerary + (j,),
                    )
                )
                if len(out) > cap:
                    raise _BranchCapHit()
        return out

    def branches_of_iterate(
        self, q: int, branch_cap: int = DEFAULT_BRANCH_CAP
    ) -> List[Branch]:
        """Affine branches of f^q in domain order."""
        if q < 1:
            raise ValueError("q must be >= 1")
        branches = self._initial_branches()
        if len(branches) > branch_cap:
            raise BranchBudgetError(branch_cap, 0, [])
        for n in range(2, q + 1):
            try:
                branches = self._refine_branches(branches, branch_cap)
            except _BranchCapHit:
                raise BranchBudgetError(branch_cap, n - 1, []) from None
        return branches

    def lap_growth(
        self, n_max: int, branch_cap: int = DEFAULT_BRANCH_CAP
    ) -> List[int]:
        """Lap counts L(1..n_max) of the iterates f^n, by branch refinement.

        L(n) counts maximal monotone runs of the affine branches of f^n.
        Exceeding the branch cap raises BranchBudgetError naming the largest
        completed n (its .laps holds the completed prefix).
        """
        if n_max < 1:
            raise ValueError("n_max must be >= 1")
        branches = self._initial_branches()
        if len(branches) > branch_cap:
            raise BranchBudgetError(branch_cap, 0, [])
        laps = [_monotone_runs(branches)]
        for n in range(2, n_max + 1):
            try:
                branches = self._refine_branches(branches, branch_cap)
            except _BranchCapHit:
                raise BranchBudgetError(branch_cap, n - 1, laps) from None
            laps.append(_monotone_runs(branches))
        return laps

    # -- periodic points ---------------------------------------------------------

    def periodic_points(
        self, q: int, branch_cap: int = DEFAULT_BRANCH_CAP
    ) -> List[Tuple[Scalar, int]]:
        """All fixed points of f^q with their least periods, sorted by point.

        Each branch of f^q contributes at most one fixed point, solved from its
        affine formula; duplicates at shared branch endpoints are merged
        (exactly in rational mode, within 1e-12 otherwise). A translation
        branch (slope 1, offset 0) means a continuum of fixed points and
        raises FixedPointContinuumError.
        """
        branches = self.branches_of_iterate(q, branch_cap)
        exact = self.is_exact
        slack = 0 if exact else MERGE_TOL
        raw: List[Scalar] = []
        for br in branches:
            s, o = br.slope, br.offset
            if s == 1:
                if o == 0:
                    raise FixedPointContinuumError(
                        f"f^{q} is the identity on [{br.lo}, {br.hi}] "
                        f"(itinerary {br.itinerary})"
                    )
                continue  # translation: no fixed point on this branch
            x = o / (1 - s)
            if br.lo - slack <= x <= br.hi + slack:
                raw.append(x)
        raw.sort()
        merged: List[Scalar] = []
        for x in raw:
            if merged and (x == merged[-1] if exact else abs(x - merged[-1]) <= slack):
                continue
            merged.append(x)
        return [(x, self._least_period(x, q, exact)) for x in merged]

    def _least_period(self, x: Scalar, q: int, exact: bool) -> int:
        orbit = [x]
        for _ in range(q):
            orbit.append(self.eval(orbit[-1]))
        for j in _divisors(q):
            hit = orbit[j] == x if exact else abs(orbit[j] - x) <= PERIOD_TOL
            if hit:
                return j
        raise RuntimeError(f"point {x!r} failed to close up after {q} steps")

    # -- conjugacy helpers -------------------------------------------------------

    def rescaled_to_unit(self) -> "PLMap":
        """Affine conjugate on [0, 1] (same type, same entropy)."""
        a = self.breakpoints[0]
        w = self.breakpoints[-1] - a
        return PLMap(
            tuple((b - a) / w for b in self.breakpoints),
            tuple((v - a) / w for v in self.values),
        )


def _monotone_runs(branches: List[Branch]) -> int:
    runs = 1
    for a, b in zip(branches, branches[1:]):
        if (a.slope > 0) != (b.slope > 0):
            runs += 1
    return runs


def _divisors(q: int) -> List[int]:
    out = [j for j in range(1, q + 1) if q % j == 0]
    return out
