"""Exact rational helpers: parsing, serialization, simplest-in-interval."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ConfigError


def parse_rational(value: int | str | Fraction) -> Fraction:
    """Parse ``"3/2"``, ``"0.5"`` or an integer into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"not a rational number: {value!r}") from exc
    raise ConfigError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(q: Fraction) -> str:
    """Serialize a Fraction as ``p`` or ``p/q``."""
    return str(q)


def rat_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """Return the rational with smallest denominator (then numerator) in [lo, hi].

    Stern-Brocot style descent; both endpoints must be nonnegative.
    """
    if lo > hi:
        raise ValueError("empty interval")
    if lo < 0:
        raise ValueError("negative endpoints not supported")
    if lo == hi:
        return lo
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= hi:
        return Fraction(ceil_lo)
    whole = lo.numerator // lo.denominator
    frac = simplest_in_interval(1 / (hi - whole), 1 / (lo - whole))
    return whole + 1 / frac


def log_upper(x: int) -> Fraction:
    """Natural log of a positive integer as an exact rational close to the float value."""
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return Fraction(math.log(x))
