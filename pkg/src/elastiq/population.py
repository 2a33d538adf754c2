"""Ensembles of respondents and the effective "collective mind" model.

Every respondent shares the same conceptual state and measurement axes but
carries personal elastics.  Averaging their outcome statistics produces a
table that is itself fittable, and the fitted effective model is generally
asymmetric and unequal-epsilon even when every individual is symmetric:
averaging breaks the symmetry unless all respondents are identical.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._numeric import Number, all_exact
from .distributions import ElasticParams
from .errors import ClosedFormInvalidError, InputValidationError, SensitivityWarning
from .forward import (
    CMeasurement,
    ModelParams,
    Quad,
    SeqProbTable,
    UpdatePolicy,
    run_sequence,
    sequential_probs_closed_form,
    sequential_probs_integral,
)
from .geometry import AngleTriple
from .inverse import Gauge, fit
from .validation import check_finite

_WEIGHT_TOL = 1e-12
_LIFT_TOL = 1e-12


@dataclass(frozen=True)
class Respondent:
    """One subject's personal elastics; weight defaults to uniform."""

    elastic_a: ElasticParams
    elastic_b: ElasticParams
    weight: Optional[Number] = None

    def __post_init__(self) -> None:
        if self.weight is not None:
            check_finite(self.weight, "weight")
            if self.weight < 0:
                raise InputValidationError(
                    f"weight must be non-negative, got {self.weight}"
                )


@dataclass(frozen=True)
class Ensemble:
    """Respondents plus the angle triple they all share."""

    respondents: tuple[Respondent, ...]
    angles: AngleTriple

    def __post_init__(self) -> None:
        object.__setattr__(self, "respondents", tuple(self.respondents))
        if not self.respondents:
            raise InputValidationError("ensemble needs at least one respondent")
        given = [r.weight is not None for r in self.respondents]
        if any(given) and not all(given):
            raise InputValidationError(
                "either give every respondent a weight or none of them"
            )
        if all(given):
            total = sum(r.weight for r in self.respondents)
            if all_exact(*(r.weight for r in self.respondents)):
                if total != 1:
                    raise InputValidationError(f"weights must sum to 1, got {total!r}")
            elif abs(total - 1) > _WEIGHT_TOL:
                raise InputValidationError(f"weights must sum to 1, got {total!r}")

    def weights(self) -> tuple[Number, ...]:
        if self.respondents[0].weight is None:
            n = len(self.respondents)
            return tuple(Fraction(1, n) for _ in self.respondents)
        return tuple(r.weight for r in self.respondents)

    def model_for(self, index: int) -> ModelParams:
        r = self.respondents[index]
        return ModelParams(
            eps_a=r.elastic_a.epsilon,
            d_a=r.elastic_a.d,
            eps_b=r.elastic_b.epsilon,
            d_b=r.elastic_b.d,
            cos_theta=self.angles.cos_theta,
            cos_theta_a=self.angles.cos_theta_a,
            cos_theta_b=self.angles.cos_theta_b,
        )


def respondent_tables(e: Ensemble) -> list[SeqProbTable]:
    """Each respondent's own forward table, in ensemble order.

    Respondents whose landing points fall outside their breakable regions
    are computed by integration and flagged with a sensitivity warning;
    the rest go through the closed form (the two agree on the overlap).
    """
    tables = []
    for i in range(len(e.respondents)):
        m = e.model_for(i)
        try:
            tables.append(sequential_probs_closed_form(m))
        except ClosedFormInvalidError:
            warnings.warn(
                SensitivityWarning(
                    f"respondent {i} violates the sensitivity constraints; "
                    "using the integral route"
                ),
                stacklevel=2,
            )
            tables.append(sequential_probs_integral(m.rho_a(), m.rho_b(), e.angles))
    return tables


def _weighted_quad(quads: Sequence[Quad], weights: Sequence[Number]) -> Quad:
    entries = []
    for i in range(4):
        total: Number = 0
        for quad, w in zip(quads, weights):
            total = total + w * quad[i]
        entries.append(total)
    return Quad(*entries)


def averaged_table(e: Ensemble) -> SeqProbTable:
    """The ensemble's observable statistics: the weighted per-respondent mix.

    Weight-linear in the respondents, so sub-ensembles can be averaged in
    any grouping.
    """
    tables = respondent_tables(e)
    weights = e.weights()
    return SeqProbTable(
        p_ab=_weighted_quad([t.p_ab for t in tables], weights),
        p_ba=_weighted_quad([t.p_ba for t in tables], weights),
    )


def effective_refit(e: Ensemble, g: Gauge) -> ModelParams:
    """Fit one effective model to the averaged table under the given gauge."""
    return fit(averaged_table(e), g)


def symmetry_breaking_check(eps1: Number, eps2: Number, tol: Number = 0) -> bool:
    """Whether a two-respondent symmetric average stays symmetric.

    Two respondents with centered elastics of half-widths eps1 and eps2
    (each respondent using the same elastic for both measurements) average
    to a table expressible by a single centered equal-epsilon model if and
    only if (eps1 - eps2)^2 = 0.  Returns True exactly when eps1 equals
    eps2 (within ``tol``, default exact); False means averaging breaks the
    symmetric form.
    """
    for name, eps in (("eps1", eps1), ("eps2", eps2)):
        check_finite(eps, name)
        if not 0 < eps <= 1:
            raise InputValidationError(f"{name} must lie in (0, 1], got {eps}")
    if tol < 0:
        raise InputValidationError(f"tol must be non-negative, got {tol}")
    return abs(eps1 - eps2) <= tol


def has_repeat_contradiction(outcomes: Sequence[str], ids: Sequence[str]) -> bool:
    """Whether any repeated measurement in a path changed its outcome."""
    seen: dict[str, str] = {}
    for mid, outcome in zip(ids, outcomes):
        if mid in seen and seen[mid] != outcome:
            return True
        seen[mid] = outcome
    return False


def replicability_lifts(
    e: Ensemble,
    sequence: Sequence[str],
    policy: UpdatePolicy = "minimal-truncation",
    c: Optional[CMeasurement] = None,
) -> bool:
    """Whether per-respondent replicability survives ensemble averaging.

    Runs the sequence for every respondent and adds up the weighted
    probability of every path in which a repeated measurement contradicts
    its earlier outcome.  True when that total is 0 (to 1e-12 in float
    mode): then every ensemble-level repeat probability equals the
    ensemble-level first-pass probability, P(AyBy...Ay) = P(AyBy...).
    """
    total: Number = 0
    ids = tuple(str(s).upper() for s in sequence)
    for i, w in enumerate(e.weights()):
        tree = run_sequence(ids, e.model_for(i), policy=policy, c=c)
        for outcomes, prob in tree.paths():
            if has_repeat_contradiction(outcomes, ids[: len(outcomes)]):
                total = total + w * prob
    if all_exact(total):
        return total == 0
    return abs(total) <= _LIFT_TOL
