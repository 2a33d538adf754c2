"""Input validation helpers shared across modules."""
from __future__ import annotations

from ._numeric import Number
from .errors import InputValidationError


def require(condition: bool, message: str) -> None:
    if not condition:
        raise InputValidationError(message)


def check_finite(value: Number, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) and not hasattr(value, "denominator"):
        raise InputValidationError(f"{name} must be a real number, got {value!r}")
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        raise InputValidationError(f"{name} must be finite, got {value!r}")


def check_in_closed(value: Number, lo: Number, hi: Number, name: str) -> None:
    check_finite(value, name)
    if not lo <= value <= hi:
        raise InputValidationError(f"{name} must lie in [{lo}, {hi}], got {value}")


def check_cosine(value: Number, name: str) -> None:
    check_in_closed(value, -1, 1, name)


def check_positive(value: Number, name: str) -> None:
    check_finite(value, name)
    if not value > 0:
        raise InputValidationError(f"{name} must be positive, got {value}")


def check_probability(value: Number, name: str, tol: float = 0.0) -> None:
    check_finite(value, name)
    if not -tol <= value <= 1 + tol:
        raise InputValidationError(f"{name} must be a probability in [0, 1], got {value}")


def check_choice(value: object, choices: tuple, name: str) -> None:
    if value not in choices:
        raise InputValidationError(f"{name} must be one of {choices}, got {value!r}")
