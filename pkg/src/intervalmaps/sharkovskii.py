"""Sharkovskii's total order on periods and the period sets it prescribes.

The order runs: odd numbers >= 3 ascending, then 2 * odds, 4 * odds, ...,
then the sentinel 2^inf, and finally the powers of two in decreasing order
down to 1. A map "of type n" realizes exactly the periods m with n <= m in
this order (for the sentinel: exactly the powers of two).
"""

from __future__ import annotations

from typing import Set, Tuple, Union

TWO_INF = "2^inf"

SharkovskiiValue = Union[int, str]

__all__ = ["TWO_INF", "SharkovskiiValue", "expected_period_set", "sharkovskii_le"]


def _key(v: SharkovskiiValue) -> Tuple[int, int, int]:
    if v == TWO_INF:
        return (1, 0, 0)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ValueError(f"period must be a positive integer or {TWO_INF!r}, got {v!r}")
    e = (v & -v).bit_length() - 1
    odd = v >> e
    if odd == 1:
        return (2, -e, 0)
    return (0, e, odd)


def sharkovskii_le(a: SharkovskiiValue, b: SharkovskiiValue) -> bool:
    """a precedes or equals b: a period-a point forces period-b points."""
    return _key(a) <= _key(b)


def expected_period_set(type_n: SharkovskiiValue, q_max: int) -> Set[int]:
    """All periods <= q_max that a map of the given type realizes."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    _key(type_n)  # validate
    return {m for m in range(1, q_max + 1) if sharkovskii_le(type_n, m)}
