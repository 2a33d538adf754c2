"""Exception hierarchy. Every failure mode raised by the library derives from ElastiqError."""
from __future__ import annotations


class ElastiqError(Exception):
    """Base class for all library errors."""


class InputValidationError(ElastiqError, ValueError):
    """An argument violates a documented precondition or type invariant."""


class DegenerateDensityError(InputValidationError):
    """A zero-width uniform density was requested; use pin() for deterministic elastics."""


class DegenerateGeometryError(ElastiqError):
    """The two measurement axes coincide (sin theta = 0), so the reconstruction frame is undefined."""


class InfeasibleGeometryError(ElastiqError):
    """No unit state vector realizes the requested cosine triple."""


class EmptySupportError(ElastiqError):
    """Truncation or conditioning removed all probability mass (the event had probability 0)."""


class DegenerateTableError(ElastiqError):
    """A first-measurement outcome has probability 0, so the inversion ratios are undefined."""


class GaugeInfeasibleError(ElastiqError):
    """The chosen gauge value yields parameters outside their admissible ranges."""


class ClosedFormInvalidError(ElastiqError):
    """The sensitivity constraints fail, so the closed-form product formula does not apply."""


class NormalizationRefusedError(ElastiqError):
    """A survey quadruple is too far from unit sum to be attributed to rounding."""


class NotFittedError(ElastiqError):
    """The estimator must be fitted before this attribute or method is used."""


class SensitivityWarning(UserWarning):
    """Fitted parameters violate the sensitivity constraints; forward closed form will not apply."""
