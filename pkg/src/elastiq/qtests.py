"""Parameter-free quantum equalities on a sequential probability table.

Any non-degenerate Hilbert-space model of two sequential yes/no questions
forces four exact identities on the 8 joint probabilities.  Violations are
therefore direct evidence that no quantum model fits the data, no parameter
estimation required.  Each test comes with its analytic maximum so the size
of a violation can be quoted as a percentage.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._numeric import Number, one_like, round_to_sig_figs
from .errors import InputValidationError
from .forward import ModelParams, SeqProbTable, sequential_probs_closed_form
from .inverse import CompatibilityReport, extract_ratios, quantum_compatibility

Q_MAX = 1
Q1_MAX = 0.25
Q2_MAX = 0.25
Q3_MAX = 1

_DECOMPOSITION_TOL = 1e-12


@dataclass(frozen=True)
class QTestReport:
    """All four quantum equalities for one table, with context.

    ``rel_indeterminism`` and ``rel_asymmetry`` are the two terms whose
    difference reproduces q; they are only available when model parameters
    were supplied.  ``pct_of_max`` holds |q|, |q1|, |q2|, |q3| relative to
    their maxima, as percentages rounded to two significant figures.
    """

    q: Number
    q1: Number
    q2: Number
    q3: Number
    pct_of_max: tuple[float, float, float, float]
    rel_indeterminism: Optional[Number] = None
    rel_asymmetry: Optional[Number] = None


def qq_equality(t: SeqProbTable) -> Number:
    """The order-effect functional q; zero for every quantum model.

    q = [P(ByAy) - P(AyBy)] + [P(BnAn) - P(AnBn)], which by unitarity
    equals [P(AyBn) + P(AnBy)] - [P(ByAn) + P(BnAy)].
    """
    return (t.p_ba.yy - t.p_ab.yy) + (t.p_ba.nn - t.p_ab.nn)


def qq_decomposition(m: ModelParams) -> tuple[Number, Number]:
    """Split q into its two model-level causes.

    The first term, (cos_theta/2)(1/eps_a - 1/eps_b), measures *relative
    indeterminism*: it vanishes when both elastics are equally breakable.
    The second, (1/2)(d_a/eps_a * cos_theta_b/eps_b - d_b/eps_b *
    cos_theta_a/eps_a), measures *relative asymmetry*: it vanishes when
    both elastics are centered.  q of the forward table equals first minus
    second, so q = 0 requires a conspiracy between the two or full quantum
    symmetry (eps = 1, d = 0).
    """
    one = one_like(
        m.eps_a, m.d_a, m.eps_b, m.d_b, m.cos_theta, m.cos_theta_a, m.cos_theta_b
    )
    indeterminism = (m.cos_theta / 2) * (one / m.eps_a - one / m.eps_b)
    asymmetry = (
        (m.d_a / m.eps_a) * (m.cos_theta_b / m.eps_b)
        - (m.d_b / m.eps_b) * (m.cos_theta_a / m.eps_a)
    ) / 2
    return indeterminism, asymmetry


def q_equalities(t: SeqProbTable) -> tuple[Number, Number, Number]:
    """The three product-form equalities q1, q2, q3; each zero under quantum.

    q1 = P(ByAn)P(BnAn) - P(BnAy)P(ByAy)
    q2 = P(AyBn)P(AnBn) - P(AnBy)P(AyBy)
    q3 = P(AnBy)P(BnAn) - P(AnBn)P(BnAy)

    |q1| and |q2| can reach 0.25 at most, |q3| can reach 1.
    """
    q1 = t.p_ba.yn * t.p_ba.nn - t.p_ba.ny * t.p_ba.yy
    q2 = t.p_ab.yn * t.p_ab.nn - t.p_ab.ny * t.p_ab.yy
    q3 = t.p_ab.ny * t.p_ba.nn - t.p_ab.nn * t.p_ba.ny
    return q1, q2, q3


def _pct(value: Number, maximum: float) -> float:
    return round_to_sig_figs(100.0 * abs(float(value)) / maximum, 2)


def quantum_test_report(
    t: SeqProbTable, params: Optional[ModelParams] = None
) -> QTestReport:
    """Assemble all quantum tests for one table.

    When ``params`` is given, the decomposition terms are included and the
    identity q = indeterminism - asymmetry is verified against the table's
    q within 1e-12, which catches params that do not belong to the table.
    """
    q = qq_equality(t)
    q1, q2, q3 = q_equalities(t)
    indeterminism = asymmetry = None
    if params is not None:
        indeterminism, asymmetry = qq_decomposition(params)
        table_q = qq_equality(sequential_probs_closed_form(params))
        if abs(float(indeterminism - asymmetry - table_q)) > _DECOMPOSITION_TOL:
            raise InputValidationError(
                "decomposition does not reproduce q; the supplied params do "
                "not match any consistent table"
            )
        if abs(float(q - table_q)) > 1e-9:
            raise InputValidationError(
                "supplied params do not reproduce the table's q "
                f"({table_q!r} vs {q!r}); pass the params fitted to this table"
            )
    return QTestReport(
        q=q,
        q1=q1,
        q2=q2,
        q3=q3,
        pct_of_max=(_pct(q, Q_MAX), _pct(q1, Q1_MAX), _pct(q2, Q2_MAX), _pct(q3, Q3_MAX)),
        rel_indeterminism=indeterminism,
        rel_asymmetry=asymmetry,
    )


def compatibility_from_table(t: SeqProbTable, tol: float = 1e-12) -> CompatibilityReport:
    """Convenience: ratio-level quantum compatibility straight from a table."""
    return quantum_compatibility(extract_ratios(t), tol=tol)
