"""Unit vectors on the Bloch sphere and the angle bookkeeping between them.

A measurement interaction is described entirely by three cosines: the angle
between the two measurement axes and the angles each axis makes with the
state vector.  This module extracts those cosines from concrete vectors and,
going the other way, rebuilds a concrete configuration from fitted cosines
(the axes can always be rotated so that ``a_y`` lies on the x1-axis and
``b_y`` in the x1-x2 plane).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._numeric import Number
from .errors import (
    DegenerateGeometryError,
    InfeasibleGeometryError,
    InputValidationError,
)
from .validation import check_cosine, check_finite

_NORM_TOL = 1e-12
_FEASIBILITY_TOL = 1e-10


@dataclass(frozen=True)
class UnitVector3:
    """A point on the unit 2-sphere.

    Holds states and measurement axes alike.  The norm constraint is checked
    at construction: exactly for rational coordinates, within 1e-12 for
    floats.
    """

    x1: Number
    x2: Number
    x3: Number

    def __post_init__(self) -> None:
        for name in ("x1", "x2", "x3"):
            check_finite(getattr(self, name), name)
        sq = self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
        if isinstance(sq, float):
            if abs(sq - 1.0) > _NORM_TOL:
                raise InputValidationError(
                    f"coordinates must have unit norm, got |x|^2 = {sq!r}"
                )
        elif sq != 1:
            raise InputValidationError(
                f"coordinates must have unit norm, got |x|^2 = {sq!r}"
            )

    def dot(self, other: "UnitVector3") -> Number:
        return self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3

    def antipode(self) -> "UnitVector3":
        """The opposite point on the sphere: the 'no' axis of a 'yes' axis."""
        return UnitVector3(-self.x1, -self.x2, -self.x3)


@dataclass(frozen=True)
class AngleTriple:
    """The three scalar products defining a sequential-measurement geometry.

    ``cos_theta`` is between the two yes-axes ``a_y . b_y``; ``cos_theta_a``
    and ``cos_theta_b`` place the state relative to each axis (``psi . a_y``
    and ``psi . b_y``).
    """

    cos_theta: Number
    cos_theta_a: Number
    cos_theta_b: Number

    def __post_init__(self) -> None:
        check_cosine(self.cos_theta, "cos_theta")
        check_cosine(self.cos_theta_a, "cos_theta_a")
        check_cosine(self.cos_theta_b, "cos_theta_b")


def angles_from_vectors(
    psi: UnitVector3, ay: UnitVector3, by: UnitVector3
) -> AngleTriple:
    """Extract the angle triple from a concrete state and two yes-axes."""
    cos_theta = ay.dot(by)
    cos_theta_a = psi.dot(ay)
    cos_theta_b = psi.dot(by)

    def clamp(c: Number) -> Number:
        # dot products of unit vectors can exceed [-1, 1] by rounding only
        if isinstance(c, float):
            return max(-1.0, min(1.0, c))
        return c

    return AngleTriple(clamp(cos_theta), clamp(cos_theta_a), clamp(cos_theta_b))


def reconstruct_state(
    angles: AngleTriple,
) -> tuple[UnitVector3, UnitVector3, UnitVector3]:
    """Build a concrete ``(psi, ay, by)`` realizing the given angle triple.

    The configuration is fixed by convention: ``ay = (1, 0, 0)``, ``by``
    in the upper x1-x2 plane, and ``psi`` with non-negative x3 (the x3 sign
    does not affect any probability).  Square roots force float arithmetic
    here even for rational inputs.

    Raises a degenerate-geometry error when the axes are (anti-)parallel
    (``|cos_theta| = 1`` leaves psi's second coordinate undetermined) and an
    infeasible-geometry error when no unit state realizes the triple.  Norm
    excess up to 1e-10 is absorbed as rounding.
    """
    ct = float(angles.cos_theta)
    cta = float(angles.cos_theta_a)
    ctb = float(angles.cos_theta_b)
    if abs(ct) >= 1.0:
        raise DegenerateGeometryError(
            f"axes are parallel (cos_theta = {ct}); the state is underdetermined"
        )
    sin_theta = math.sqrt(1.0 - ct * ct)
    ay = UnitVector3(1.0, 0.0, 0.0)
    by = UnitVector3(ct, sin_theta, 0.0)
    y = (ctb - ct * cta) / sin_theta
    excess = cta * cta + y * y - 1.0
    if excess > _FEASIBILITY_TOL:
        raise InfeasibleGeometryError(
            "no unit state realizes these angles: "
            f"cos_theta_a^2 + y^2 = {cta * cta + y * y} > 1"
        )
    x3 = math.sqrt(max(0.0, 1.0 - cta * cta - y * y))
    psi = UnitVector3(cta, y, x3)
    return psi, ay, by
