"""Breaking-point distributions of elastic bands.

An elastic band stretched between two antipodal outcome points breaks at a
random point lambda in [-1, 1].  The distribution of lambda is represented
here as a finite list of constant-height segments plus optional point
masses, a class that is closed under every update the model performs:
truncation to an interval with renormalization (the replicability dynamics)
and replacement by a point mass at an anchor (Dirac pinning).

All operations run in dual arithmetic: feed ``fractions.Fraction`` (or int)
components and every derived quantity stays an exact rational; feed floats
and everything is ordinary float arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._numeric import Number, all_exact, one_like
from .errors import (
    DegenerateDensityError,
    EmptySupportError,
    InputValidationError,
)
from .validation import check_finite, check_in_closed

Outcome = Literal["yes", "no"]
YES: Outcome = "yes"
NO: Outcome = "no"

_MASS_TOL = 1e-12


@dataclass(frozen=True)
class Segment:
    """A constant-height piece of density on [lo, hi)."""

    lo: Number
    hi: Number
    height: Number

    def __post_init__(self) -> None:
        check_in_closed(self.lo, -1, 1, "segment lo")
        check_in_closed(self.hi, -1, 1, "segment hi")
        check_finite(self.height, "segment height")
        if not self.lo < self.hi:
            raise InputValidationError(
                f"segment needs lo < hi, got [{self.lo}, {self.hi}]"
            )
        if self.height < 0:
            raise InputValidationError(f"segment height must be >= 0, got {self.height}")

    @property
    def mass(self) -> Number:
        return self.height * (self.hi - self.lo)


@dataclass(frozen=True)
class Atom:
    """A point mass at a single breaking position."""

    position: Number
    mass: Number

    def __post_init__(self) -> None:
        check_in_closed(self.position, -1, 1, "atom position")
        check_finite(self.mass, "atom mass")
        if not self.mass > 0:
            raise InputValidationError(f"atom mass must be > 0, got {self.mass}")


@dataclass(frozen=True)
class ElasticParams:
    """Shape of a locally uniform elastic: half-width and center offset.

    ``epsilon`` measures how indeterministic the measurement is (the
    breakable fraction of the band), ``d`` how asymmetric.  The breakable
    region [d - epsilon, d + epsilon] must stay inside [-1, 1], and
    epsilon = 0 is rejected: a deterministic elastic is expressed with
    :func:`pin`, not with a zero-width uniform.
    """

    epsilon: Number
    d: Number

    def __post_init__(self) -> None:
        check_finite(self.epsilon, "epsilon")
        check_finite(self.d, "d")
        if self.epsilon <= 0:
            raise DegenerateDensityError(
                f"epsilon must be > 0, got {self.epsilon}; use pin() for a "
                "deterministic elastic"
            )
        tol = 1e-12 if isinstance(self.epsilon + abs(self.d), float) else 0
        if self.epsilon + abs(self.d) > 1 + tol:
            raise InputValidationError(
                "breakable region [d-epsilon, d+epsilon] = "
                f"[{self.d - self.epsilon}, {self.d + self.epsilon}] exits [-1, 1]"
            )


@dataclass(frozen=True)
class BreakDensity:
    """A probability distribution on [-1, 1]: segments plus point masses.

    Invariants checked at construction: segments are sorted and
    non-overlapping, atom positions strictly increasing, and the total mass
    is 1 (exactly for rational components, within 1e-12 for floats).
    """

    segments: tuple[Segment, ...] = ()
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "atoms", tuple(self.atoms))
        for prev, cur in zip(self.segments, self.segments[1:]):
            if cur.lo < prev.hi:
                raise InputValidationError(
                    "segments must be sorted and non-overlapping, got "
                    f"[{prev.lo}, {prev.hi}] then [{cur.lo}, {cur.hi}]"
                )
        for prev, cur in zip(self.atoms, self.atoms[1:]):
            if cur.position <= prev.position:
                raise InputValidationError(
                    "atom positions must be strictly increasing, got "
                    f"{prev.position} then {cur.position}"
                )
        total = self.total_mass()
        if isinstance(total, float):
            if abs(total - 1.0) > _MASS_TOL:
                raise InputValidationError(f"total mass must be 1, got {total!r}")
        elif total != 1:
            raise InputValidationError(f"total mass must be 1, got {total!r}")

    def total_mass(self) -> Number:
        total: Number = 0
        for seg in self.segments:
            total = total + seg.mass
        for atom in self.atoms:
            total = total + atom.mass
        return total

    def is_exact(self) -> bool:
        parts = [x for seg in self.segments for x in (seg.lo, seg.hi, seg.height)]
        parts += [x for atom in self.atoms for x in (atom.position, atom.mass)]
        return all_exact(*parts)

    @property
    def support_min(self) -> Number:
        candidates = [seg.lo for seg in self.segments if seg.height > 0]
        candidates += [atom.position for atom in self.atoms]
        if not candidates:
            raise InputValidationError("density has empty support")
        return min(candidates)

    @property
    def support_max(self) -> Number:
        candidates = [seg.hi for seg in self.segments if seg.height > 0]
        candidates += [atom.position for atom in self.atoms]
        if not candidates:
            raise InputValidationError("density has empty support")
        return max(candidates)

    def atom_positions(self) -> tuple[Number, ...]:
        return tuple(atom.position for atom in self.atoms)

    def mass_in(self, lo: Number, hi: Number) -> Number:
        """Probability mass in the closed interval [lo, hi]."""
        total: Number = 0
        for seg in self.segments:
            left = max(lo, seg.lo)
            right = min(hi, seg.hi)
            if left < right:
                total = total + seg.height * (right - left)
        for atom in self.atoms:
            if lo <= atom.position <= hi:
                total = total + atom.mass
        return total

    def cdf(self, x: Number) -> Number:
        """Probability that the break point falls at or below ``x``.

        Atoms at position p contribute for every x >= p, so an atom at -1
        is already counted at x = -1.  At or beyond the top of the support
        the result is exactly 1 in either arithmetic mode; float results
        are clamped to [0, 1] so the function stays monotone under rounding.
        """
        check_in_closed(x, -1, 1, "x")
        if x >= self.support_max:
            return one_like(x, *(s.hi for s in self.segments))
        total = self.mass_in(-1, x)
        if isinstance(total, float):
            return min(max(total, 0.0), 1.0)
        return total


def locally_uniform(p: ElasticParams) -> BreakDensity:
    """The elastic that breaks uniformly on [d - epsilon, d + epsilon].

    The globally uniform case (epsilon=1, d=0) reproduces the Born rule.
    """
    half = one_like(p.epsilon, p.d) / 2
    return BreakDensity(
        segments=(Segment(p.d - p.epsilon, p.d + p.epsilon, half / p.epsilon),)
    )


def cdf(rho: BreakDensity, x: Number) -> Number:
    return rho.cdf(x)


def truncate_renormalize(
    rho: BreakDensity, interval: tuple[Number, Number]
) -> BreakDensity:
    """Condition the density on the closed interval [lo, hi].

    This is the update a surviving outcome record imposes on an elastic:
    only break points that guarantee the recorded outcome remain possible,
    with the density rescaled to total mass 1.  An interval that already
    covers the whole support returns the input unchanged, which makes
    repeated truncation to the same interval an exact identity even in
    float mode.

    Raises an empty-support error when the interval carries no mass: the
    conditioning event had probability 0.
    """
    lo, hi = interval
    check_in_closed(lo, -1, 1, "interval lo")
    check_in_closed(hi, -1, 1, "interval hi")
    if lo > hi:
        raise InputValidationError(f"interval needs lo <= hi, got [{lo}, {hi}]")
    if lo <= rho.support_min and hi >= rho.support_max:
        return rho
    mass = rho.mass_in(lo, hi)
    if mass <= 0:
        raise EmptySupportError(
            f"no break-point mass in [{lo}, {hi}]; conditioning event has "
            "probability 0"
        )
    segments = []
    for seg in rho.segments:
        left = max(lo, seg.lo)
        right = min(hi, seg.hi)
        if left < right and seg.height > 0:
            segments.append(Segment(left, right, seg.height / mass))
    atoms = [
        Atom(atom.position, atom.mass / mass)
        for atom in rho.atoms
        if lo <= atom.position <= hi
    ]
    return BreakDensity(segments=tuple(segments), atoms=tuple(atoms))


def pin(outcome: Outcome) -> BreakDensity:
    """The deterministic elastic enforcing ``outcome`` at every landing.

    A band breakable only at -1 always leaves the full band collapsing onto
    the +1 anchor side of any landing point, which is the yes outcome; the
    mirror holds at +1 for no.
    """
    if outcome == YES:
        return BreakDensity(atoms=(Atom(-1, 1),))
    if outcome == NO:
        return BreakDensity(atoms=(Atom(1, 1),))
    raise InputValidationError(f"outcome must be 'yes' or 'no', got {outcome!r}")


def _piece_table(rho: BreakDensity) -> list[tuple[float, object]]:
    """Cumulative-mass table of (cum_mass_before, piece), pieces in position order."""
    pieces: list[tuple[float, int, object]] = []
    for seg in rho.segments:
        if seg.height > 0:
            pieces.append((float(seg.lo), 1, seg))
    for atom in rho.atoms:
        pieces.append((float(atom.position), 0, atom))
    pieces.sort(key=lambda item: item[:2])
    table = []
    cum = 0.0
    for _, _, piece in pieces:
        table.append((cum, piece))
        cum += float(piece.mass)
    return table


def sample_break_points(
    rho: BreakDensity, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``size`` break points by inverse-CDF sampling. Returns float64."""
    if size < 0:
        raise InputValidationError(f"size must be >= 0, got {size}")
    table = _piece_table(rho)
    bounds = [cum for cum, _ in table]
    u = rng.random(size)
    out = np.empty(size, dtype=np.float64)
    index = np.searchsorted(bounds, u, side="right") - 1
    for i, (cum, piece) in enumerate(table):
        mask = index == i
        if not mask.any():
            continue
        if isinstance(piece, Atom):
            out[mask] = float(piece.position)
        else:
            frac = (u[mask] - cum) / float(piece.mass)
            lo, hi = float(piece.lo), float(piece.hi)
            out[mask] = np.minimum(lo + frac * (hi - lo), hi)
    return out


def sample_break_point(rho: BreakDensity, rng: np.random.Generator) -> float:
    """Draw one break point; deterministic for a given generator state."""
    return float(sample_break_points(rho, 1, rng)[0])
