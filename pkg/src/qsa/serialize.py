"""Stable wire formats for exact and high-precision values.

Rationals serialize as decimal strings to survive arbitrary precision in
JSON; high-precision reals carry their significant-digit count alongside
the decimal rendering.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from mpmath import mp, nstr


def rational_to_json(q: Fraction) -> dict[str, str]:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(obj: Mapping[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def high_real_str(x, digits: int) -> str:
    """Deterministic decimal rendering with ``digits`` significant digits."""
    with mp.workdps(digits + 5):
        return nstr(x, digits, strip_zeros=False)


def high_real_to_json(x, precision: int) -> dict[str, object]:
    return {"value": high_real_str(x, precision), "precision": precision}
