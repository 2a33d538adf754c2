"""Closed-form inversion: from an observed probability table back to model
parameters.

The eight observed probabilities determine the model only up to one overall
scale: the six ratios d/eps and cos/eps per side are fixed, and choosing a
single gauge value (eps_a, eps_b, or cos_theta) pins everything else down.
In exact mode every recovered quantity is a rational number whenever the
table entries are.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from ._numeric import Number, coerce, exact_number, one_like
from .errors import (
    DegenerateTableError,
    GaugeInfeasibleError,
    InputValidationError,
    SensitivityWarning,
)
from .forward import ModelParams, Quad, SeqProbTable
from .validation import check_choice, check_finite

GaugeKind = Literal["eps-a", "eps-b", "cos-theta"]
GAUGE_KINDS: tuple[GaugeKind, ...] = ("eps-a", "eps-b", "cos-theta")


@dataclass(frozen=True)
class RatioSet:
    """The six dimensionless ratios the table determines outright.

    Instances built by :func:`extract_ratios` satisfy the difference
    identities cos_theta_a/eps_a - d_a/eps_a = 2 P(Ay) - 1 and
    cos_theta_b/eps_b - d_b/eps_b = 2 P(By) - 1 by construction.
    """

    d_a_over_eps_a: Number
    cos_theta_over_eps_a: Number
    cos_theta_a_over_eps_a: Number
    d_b_over_eps_b: Number
    cos_theta_over_eps_b: Number
    cos_theta_b_over_eps_b: Number

    def __post_init__(self) -> None:
        for name in (
            "d_a_over_eps_a",
            "cos_theta_over_eps_a",
            "cos_theta_a_over_eps_a",
            "d_b_over_eps_b",
            "cos_theta_over_eps_b",
            "cos_theta_b_over_eps_b",
        ):
            check_finite(getattr(self, name), name)


@dataclass(frozen=True)
class Gauge:
    """The one free choice of a fit: which scale to fix, and at what value."""

    kind: GaugeKind
    value: Number

    def __post_init__(self) -> None:
        check_choice(self.kind, GAUGE_KINDS, "gauge kind")
        check_finite(self.value, "gauge value")
        if self.kind in ("eps-a", "eps-b"):
            if not 0 < self.value <= 1:
                raise InputValidationError(
                    f"gauge {self.kind} must lie in (0, 1], got {self.value}"
                )
        elif not -1 <= self.value <= 1:
            raise InputValidationError(
                f"gauge cos-theta must lie in [-1, 1], got {self.value}"
            )

    @classmethod
    def parse(cls, text: str, exact: bool = False) -> "Gauge":
        """Parse ``kind=value`` with value as a decimal or num/den rational."""
        kind, sep, raw = text.partition("=")
        if not sep or not raw:
            raise InputValidationError(
                f"gauge must look like eps-a=0.5, eps-b=0.6 or cos-theta=0.3, got {text!r}"
            )
        value = exact_number(raw.strip())
        return cls(kind=kind.strip(), value=coerce(value, exact))  # type: ignore[arg-type]


def _conditional_moments(q: Quad, table_name: str) -> tuple[Number, Number]:
    """(no-branch, yes-branch) conditional asymmetries of the second outcome.

    For the second elastic in this order, (nn - ny)/(nn + ny) equals
    (cos_theta + d)/eps and (yy - yn)/(yy + yn) equals (cos_theta - d)/eps,
    so their half-sum is cos_theta/eps and their half-difference is d/eps.
    """
    den_no = q.nn + q.ny
    den_yes = q.yy + q.yn
    if den_no == 0 or den_yes == 0:
        raise DegenerateTableError(
            f"a first outcome in {table_name} has probability 0; the "
            "conditional ratios are undefined"
        )
    return (q.nn - q.ny) / den_no, (q.yy - q.yn) / den_yes


def extract_ratios(t: SeqProbTable) -> RatioSet:
    """Solve the table for the six gauge-free ratios.

    The B-elastic ratios come from the A-first table (where B is the
    conditioned second measurement), the A-elastic ratios from the B-first
    table, and the two state cosines follow from the first-outcome
    marginals via the difference identities.
    """
    two = one_like(*t.p_ab, *t.p_ba) * 2
    b_no, b_yes = _conditional_moments(t.p_ab, "p_ab")
    ct_over_eb = (b_no + b_yes) / 2
    db_over_eb = (b_no - b_yes) / 2
    a_no, a_yes = _conditional_moments(t.p_ba, "p_ba")
    ct_over_ea = (a_no + a_yes) / 2
    da_over_ea = (a_no - a_yes) / 2
    cta_over_ea = da_over_ea + two * t.first_yes_a() - 1
    ctb_over_eb = db_over_eb + two * t.first_yes_b() - 1
    return RatioSet(
        d_a_over_eps_a=da_over_ea,
        cos_theta_over_eps_a=ct_over_ea,
        cos_theta_a_over_eps_a=cta_over_ea,
        d_b_over_eps_b=db_over_eb,
        cos_theta_over_eps_b=ct_over_eb,
        cos_theta_b_over_eps_b=ctb_over_eb,
    )


def epsilon_bounds(r: RatioSet) -> tuple[Number, Number]:
    """Largest feasible (eps_a, eps_b): eps <= 1/(1 + |d/eps|) keeps the
    breakable region inside the sphere."""
    one = one_like(r.d_a_over_eps_a, r.d_b_over_eps_b)
    return (
        one / (one + abs(r.d_a_over_eps_a)),
        one / (one + abs(r.d_b_over_eps_b)),
    )


def resolve(r: RatioSet, g: Gauge) -> ModelParams:
    """Scale the ratios into concrete parameters under the chosen gauge.

    Raises a gauge-infeasible error when the implied epsilons leave
    (0, bound] (see :func:`epsilon_bounds`) or an implied cosine leaves
    [-1, 1].  A violation of the sensitivity constraints is reported as a
    :class:`SensitivityWarning` instead of an error: the algebra is still
    valid, but the closed form will not reproduce the table.
    """
    if g.kind == "eps-a":
        eps_a = g.value
        cos_theta = eps_a * r.cos_theta_over_eps_a
        if r.cos_theta_over_eps_b == 0:
            raise GaugeInfeasibleError(
                "cos_theta/eps_b is 0, so eps-a cannot determine eps_b; "
                "gauge eps-b instead"
            )
        eps_b = cos_theta / r.cos_theta_over_eps_b
    elif g.kind == "eps-b":
        eps_b = g.value
        cos_theta = eps_b * r.cos_theta_over_eps_b
        if r.cos_theta_over_eps_a == 0:
            raise GaugeInfeasibleError(
                "cos_theta/eps_a is 0, so eps-b cannot determine eps_a; "
                "gauge eps-a instead"
            )
        eps_a = cos_theta / r.cos_theta_over_eps_a
    else:
        cos_theta = g.value
        if r.cos_theta_over_eps_a == 0 or r.cos_theta_over_eps_b == 0:
            raise GaugeInfeasibleError(
                "a cos_theta/eps ratio is 0, so cos-theta cannot determine "
                "the epsilons; gauge an epsilon instead"
            )
        eps_a = cos_theta / r.cos_theta_over_eps_a
        eps_b = cos_theta / r.cos_theta_over_eps_b

    bound_a, bound_b = epsilon_bounds(r)
    for name, eps, bound in (("eps_a", eps_a, bound_a), ("eps_b", eps_b, bound_b)):
        if not eps > 0:
            raise GaugeInfeasibleError(
                f"gauge implies {name} = {eps}, which is not positive"
            )
        if eps > bound:
            raise GaugeInfeasibleError(
                f"gauge implies {name} = {eps}, above its bound {bound} "
                "(the breakable region would exit the sphere)"
            )

    try:
        params = ModelParams(
            eps_a=eps_a,
            d_a=eps_a * r.d_a_over_eps_a,
            eps_b=eps_b,
            d_b=eps_b * r.d_b_over_eps_b,
            cos_theta=cos_theta,
            cos_theta_a=eps_a * r.cos_theta_a_over_eps_a,
            cos_theta_b=eps_b * r.cos_theta_b_over_eps_b,
        )
    except InputValidationError as exc:
        raise GaugeInfeasibleError(
            f"gauge implies an out-of-range parameter: {exc}"
        ) from exc
    if not params.sensitivity_satisfied():
        warnings.warn(
            SensitivityWarning(
                "fitted parameters violate the sensitivity constraints; the "
                "closed form will not reproduce the input table"
            ),
            stacklevel=2,
        )
    return params


def fit(t: SeqProbTable, g: Gauge) -> ModelParams:
    """extract_ratios then resolve: the full inversion.

    Whenever the result satisfies the sensitivity constraints,
    ``sequential_probs_closed_form(fit(t, g))`` reproduces ``t`` exactly in
    rational mode and to rounding in float mode.
    """
    return resolve(extract_ratios(t), g)


@dataclass(frozen=True)
class CompatibilityReport:
    """Verdict on whether a table admits a pure quantum (Born) model."""

    compatible: bool
    d_a_residual: Number
    d_b_residual: Number
    eps_mismatch: Number
    tol: float


def quantum_compatibility(r: RatioSet, tol: float = 1e-12) -> CompatibilityReport:
    """Test the three ratio conditions a Born model must satisfy.

    A pure quantum model has both elastics globally uniform, which forces
    d_a/eps_a = 0, d_b/eps_b = 0 and cos_theta/eps_a = cos_theta/eps_b.
    The residuals are reported so near-misses can be judged.
    """
    mismatch = r.cos_theta_over_eps_a - r.cos_theta_over_eps_b
    compatible = (
        abs(r.d_a_over_eps_a) <= tol
        and abs(r.d_b_over_eps_b) <= tol
        and abs(mismatch) <= tol
    )
    return CompatibilityReport(
        compatible=compatible,
        d_a_residual=r.d_a_over_eps_a,
        d_b_residual=r.d_b_over_eps_b,
        eps_mismatch=mismatch,
        tol=tol,
    )
