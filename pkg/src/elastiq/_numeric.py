"""Dual-arithmetic helpers: plain floats or exact rationals, chosen at construction.

Exact mode represents every quantity as a `fractions.Fraction`.  Decimal
inputs are read as fractions over powers of ten ("0.4899" -> 4899/10000),
which is what makes fitted parameters come out as exact published-style
fractions instead of binary-float approximations.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InputValidationError

Number = Union[int, float, Fraction]


def exact_number(value: Number | str) -> Fraction:
    """Exact rational from an int, Fraction, decimal/rational string, or float.

    Floats go through their shortest decimal repr, so a JSON value written
    as 0.4899 becomes exactly 4899/10000 rather than the nearest binary float.
    """
    if isinstance(value, bool):
        raise InputValidationError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise InputValidationError(f"not a number: {value!r}") from err
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise InputValidationError(f"not a finite number: {value!r}")
        return Fraction(str(value))
    raise InputValidationError(f"not a number: {value!r}")


def coerce(value: Number | str, exact: bool) -> Number:
    """Convert an input value to the arithmetic mode's representation."""
    rational = exact_number(value)
    return rational if exact else float(rational)


def is_exact(value: Number) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def all_exact(*values: Number) -> bool:
    return all(is_exact(v) for v in values)


def one_like(*values: Number) -> Number:
    """Multiplicative unit in the mode the given values live in."""
    return Fraction(1) if all_exact(*values) else 1.0


def format_number(value: Number) -> str:
    """Deterministic text form: rationals as "num/den", floats at 17 significant digits."""
    if isinstance(value, bool):
        raise InputValidationError("booleans are not numbers")
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return format(value, ".17g")


def round_to_sig_figs(value: Number, figures: int = 2) -> float:
    """Round to a fixed number of significant figures (presentation only)."""
    x = float(value)
    if x == 0.0:
        return 0.0
    return float(format(x, f".{figures}g"))
