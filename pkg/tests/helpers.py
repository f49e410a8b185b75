"""Shared test helpers."""

from decimal import Decimal


def matches_printed(value: float, printed: str, ulp: float = 1.0) -> bool:
    """True if value agrees with the printed decimal up to `ulp` units of its
    last printed digit (printed tables truncate or round inconsistently)."""
    p = Decimal(printed)
    step = Decimal(1).scaleb(p.as_tuple().exponent)
    return abs(Decimal(repr(float(value))) - p) <= Decimal(repr(ulp)) * step
