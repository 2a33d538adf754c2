"""Input parsing, table normalization, and report/figure emission.

All emitted numbers are strings: rationals as "num/den", floats with 17
significant digits, so identical inputs produce byte-identical reports.
"""
from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping, Optional

from ._numeric import Number, coerce, exact_number, format_number
from .distributions import ElasticParams
from .errors import (
    ElastiqError,
    InputValidationError,
    NormalizationRefusedError,
)
from .forward import (
    CMeasurement,
    ModelParams,
    POLICIES,
    Quad,
    SeqProbTable,
    UpdatePolicy,
    run_sequence,
    sequential_probs_closed_form,
    sequential_probs_integral,
    simulate,
)
from .geometry import AngleTriple, reconstruct_state
from .inverse import (
    Gauge,
    RatioSet,
    epsilon_bounds,
    extract_ratios,
    quantum_compatibility,
    resolve,
)
from .population import (
    Ensemble,
    Respondent,
    averaged_table,
    effective_refit,
    has_repeat_contradiction,
    replicability_lifts,
    respondent_tables,
)
from .qtests import QTestReport, quantum_test_report
from .validation import check_choice

_QUAD_KEYS = ("yy", "yn", "ny", "nn")
_SUM_SLACK = Fraction(1, 1000)

PARAM_NAMES = (
    "eps_a",
    "d_a",
    "eps_b",
    "d_b",
    "cos_theta",
    "cos_theta_a",
    "cos_theta_b",
)


@dataclass(frozen=True)
class SurveyInput:
    """A raw published table: label, two quadruples, optional extras.

    Probabilities are held as exact decimal fractions regardless of the
    requested arithmetic mode; conversion happens at normalization.
    ``corrections`` maps entries like ``pAB.nn`` to replacement values and
    overrides the default normalization.  ``counts`` is carried for
    reference only.
    """

    label: str
    p_ab: tuple[Fraction, Fraction, Fraction, Fraction]
    p_ba: tuple[Fraction, Fraction, Fraction, Fraction]
    corrections: Mapping[str, Fraction] = field(default_factory=dict)
    counts: Optional[Mapping[str, Any]] = None
    sha256: Optional[str] = None


def _parse_quad(obj: Any, name: str) -> tuple[Fraction, ...]:
    if not isinstance(obj, Mapping):
        raise InputValidationError(f"field {name!r} must be an object with yy/yn/ny/nn")
    missing = [k for k in _QUAD_KEYS if k not in obj]
    if missing:
        raise InputValidationError(f"field {name!r} is missing entries {missing}")
    extra = [k for k in obj if k not in _QUAD_KEYS]
    if extra:
        raise InputValidationError(f"field {name!r} has unknown entries {extra}")
    out = []
    for k in _QUAD_KEYS:
        value = exact_number(obj[k])
        if not 0 <= value <= 1:
            raise InputValidationError(
                f"{name}.{k} must be a probability in [0, 1], got {obj[k]!r}"
            )
        out.append(value)
    return tuple(out)


def _canonical_correction_key(key: str) -> str:
    slot, dot, entry = key.replace("_", "").lower().partition(".")
    if dot != "." or slot not in ("pab", "pba") or entry not in _QUAD_KEYS:
        raise InputValidationError(
            f"correction key must look like pAB.nn or pBA.yy, got {key!r}"
        )
    return f"{slot}.{entry}"


def survey_from_dict(data: Mapping[str, Any], sha256: Optional[str] = None) -> SurveyInput:
    if not isinstance(data, Mapping):
        raise InputValidationError("survey input must be a JSON object")
    for required in ("label", "pAB", "pBA"):
        if required not in data:
            raise InputValidationError(f"survey input is missing field {required!r}")
    known = {"label", "pAB", "pBA", "corrections", "counts"}
    unknown = [k for k in data if k not in known]
    if unknown:
        raise InputValidationError(f"survey input has unknown fields {unknown}")
    corrections = {}
    for key, value in (data.get("corrections") or {}).items():
        corrections[_canonical_correction_key(key)] = exact_number(value)
    return SurveyInput(
        label=str(data["label"]),
        p_ab=_parse_quad(data["pAB"], "pAB"),
        p_ba=_parse_quad(data["pBA"], "pBA"),
        corrections=corrections,
        counts=data.get("counts"),
        sha256=sha256,
    )


def load_json(path: str) -> tuple[Any, str]:
    """Parse a JSON file, returning (data, sha256 of the raw bytes)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw.decode("utf-8")), digest
    except json.JSONDecodeError as err:
        raise InputValidationError(
            f"{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err


def load_survey(path: str) -> SurveyInput:
    data, digest = load_json(path)
    return survey_from_dict(data, sha256=digest)


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled example table (clinton_gore, rose_jackson)."""
    return str(resources.files("elastiq.fixtures").joinpath(f"{name}.json"))


def load_fixture(name: str) -> SurveyInput:
    return load_survey(fixture_path(name))


def _normalize_quad(
    quad: tuple[Fraction, ...],
    slot: str,
    corrections: Mapping[str, Fraction],
    rescale: bool,
) -> tuple[Fraction, ...]:
    entries = list(quad)
    directed = False
    for i, key in enumerate(_QUAD_KEYS):
        full = f"{slot}.{key}"
        if full in corrections:
            entries[i] = corrections[full]
            directed = True
    total = sum(entries)
    if directed:
        if total != 1:
            raise NormalizationRefusedError(
                f"corrections leave {slot} summing to {total}, not 1"
            )
        return tuple(entries)
    if total == 1:
        return tuple(entries)
    if abs(total - 1) > _SUM_SLACK:
        raise NormalizationRefusedError(
            f"{slot} sums to {total}; more than 1e-3 away from 1, refusing to "
            "normalize silently"
        )
    if rescale:
        return tuple(e / total for e in entries)
    entries[3] = entries[3] + (1 - total)
    return tuple(entries)


def normalize_table(
    raw: SurveyInput, exact: bool = False, rescale: bool = False
) -> SeqProbTable:
    """Restore exact unit sums and convert to the requested arithmetic.

    The default policy follows published practice for rounding defects: the
    remainder entry nn absorbs the deficit, one entry changed by one
    rounding step.  ``rescale=True`` divides the whole quadruple instead.
    Explicit correction directives replace entries verbatim and must
    restore the unit sum themselves.  Sums further than 1e-3 from 1 are
    refused: that is more than rounding can explain.
    """
    quads = {}
    for slot, quad in (("pab", raw.p_ab), ("pba", raw.p_ba)):
        entries = _normalize_quad(quad, slot, raw.corrections, rescale)
        for key, value in zip(_QUAD_KEYS, entries):
            if not 0 <= value <= 1:
                raise NormalizationRefusedError(
                    f"normalizing {slot}.{key} leaves {value}, outside [0, 1]"
                )
        quads[slot] = Quad(*(v if exact else float(v) for v in entries))
    return SeqProbTable(p_ab=quads["pab"], p_ba=quads["pba"])


def _quad_dict(q: Quad) -> dict[str, str]:
    return {k: format_number(v) for k, v in zip(_QUAD_KEYS, q)}


def _table_dict(t: SeqProbTable) -> dict[str, dict[str, str]]:
    return {"pAB": _quad_dict(t.p_ab), "pBA": _quad_dict(t.p_ba)}


def _params_dict(m: ModelParams) -> dict[str, Any]:
    values = {name: format_number(getattr(m, name)) for name in PARAM_NAMES}
    approx = {name: format_number(float(getattr(m, name))) for name in PARAM_NAMES}
    return {
        "values": values,
        "approx": approx,
        "sensitivity_satisfied": m.sensitivity_satisfied(),
    }


def _ratios_dict(r: RatioSet) -> dict[str, str]:
    names = (
        "d_a_over_eps_a",
        "cos_theta_over_eps_a",
        "cos_theta_a_over_eps_a",
        "d_b_over_eps_b",
        "cos_theta_over_eps_b",
        "cos_theta_b_over_eps_b",
    )
    return {name: format_number(getattr(r, name)) for name in names}


def _qtests_dict(rep: QTestReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "q": format_number(rep.q),
        "q1": format_number(rep.q1),
        "q2": format_number(rep.q2),
        "q3": format_number(rep.q3),
        "pct_of_max": {
            "q": rep.pct_of_max[0],
            "q1": rep.pct_of_max[1],
            "q2": rep.pct_of_max[2],
            "q3": rep.pct_of_max[3],
        },
    }
    if rep.rel_indeterminism is not None:
        out["rel_indeterminism"] = format_number(rep.rel_indeterminism)
        out["rel_asymmetry"] = format_number(rep.rel_asymmetry)
    return out


def _reconstruction_dict(m: ModelParams) -> dict[str, Any]:
    try:
        psi, ay, by = reconstruct_state(m.angles)
    except ElastiqError as err:
        return {"error": str(err)}
    return {
        "psi": [format_number(v) for v in (psi.x1, psi.x2, psi.x3)],
        "a_yes": [format_number(v) for v in (ay.x1, ay.x2, ay.x3)],
        "b_yes": [format_number(v) for v in (by.x1, by.x2, by.x3)],
    }


def _provenance(
    exact: bool,
    sha256: Optional[str] = None,
    gauge: Optional[Gauge] = None,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
) -> dict[str, Any]:
    out: dict[str, Any] = {"mode": "exact" if exact else "float"}
    if sha256 is not None:
        out["input_sha256"] = sha256
    if gauge is not None:
        out["gauge"] = f"{gauge.kind}={format_number(gauge.value)}"
    if seed is not None:
        out["seed"] = seed
    if trials is not None:
        out["trials"] = trials
    return out


def _max_abs_difference(a: SeqProbTable, b: SeqProbTable) -> Number:
    return max(
        abs(x - y)
        for qa, qb in ((a.p_ab, b.p_ab), (a.p_ba, b.p_ba))
        for x, y in zip(qa, qb)
    )


def fit_report(survey: SurveyInput, gauge: Gauge, exact: bool = False) -> dict:
    """Full inversion report: ratios, parameters, diagnostics, geometry."""
    table = normalize_table(survey, exact=exact)
    ratios = extract_ratios(table)
    params = resolve(ratios, gauge)
    bound_a, bound_b = epsilon_bounds(ratios)
    compat = quantum_compatibility(ratios)
    sensitivity = params.sensitivity_satisfied()
    qrep = quantum_test_report(table, params if sensitivity else None)
    report = {
        "label": survey.label,
        "provenance": _provenance(exact, sha256=survey.sha256, gauge=gauge),
        "normalized_table": _table_dict(table),
        "ratios": _ratios_dict(ratios),
        "epsilon_bounds": {
            "eps_a_max": format_number(bound_a),
            "eps_b_max": format_number(bound_b),
        },
        "params": _params_dict(params),
        "quantum_compatibility": {
            "compatible": compat.compatible,
            "d_a_residual": format_number(compat.d_a_residual),
            "d_b_residual": format_number(compat.d_b_residual),
            "eps_mismatch": format_number(compat.eps_mismatch),
        },
        "quantum_tests": _qtests_dict(qrep),
        "reconstruction": _reconstruction_dict(params),
    }
    if sensitivity:
        round_trip = sequential_probs_closed_form(params)
        report["round_trip_max_abs_error"] = format_number(
            _max_abs_difference(round_trip, table)
        )
    return report


def tests_report(survey: SurveyInput, exact: bool = False) -> dict:
    """Parameter-free quantum tests of one table, no gauge required."""
    table = normalize_table(survey, exact=exact)
    ratios = extract_ratios(table)
    compat = quantum_compatibility(ratios)
    qrep = quantum_test_report(table)
    return {
        "label": survey.label,
        "provenance": _provenance(exact, sha256=survey.sha256),
        "normalized_table": _table_dict(table),
        "quantum_tests": _qtests_dict(qrep),
        "quantum_compatibility": {
            "compatible": compat.compatible,
            "d_a_residual": format_number(compat.d_a_residual),
            "d_b_residual": format_number(compat.d_b_residual),
            "eps_mismatch": format_number(compat.eps_mismatch),
        },
    }


def simulate_report(
    survey: SurveyInput,
    gauge: Gauge,
    trials: int,
    seed: int,
    exact: bool = False,
) -> dict:
    """Monte Carlo check of a fitted model against its own closed form."""
    table = normalize_table(survey, exact=exact)
    params = resolve(extract_ratios(table), gauge)
    empirical = simulate(params, "AB", trials, seed)
    analytic = sequential_probs_integral(params.rho_a(), params.rho_b(), params.angles)

    z_scores: dict[str, dict[str, str]] = {}
    counts: dict[str, dict[str, int]] = {}
    max_abs_z = 0.0
    for slot, emp_quad, ana_quad in (
        ("pAB", empirical.p_ab, analytic.p_ab),
        ("pBA", empirical.p_ba, analytic.p_ba),
    ):
        z_scores[slot] = {}
        counts[slot] = {}
        for key, emp, ana in zip(_QUAD_KEYS, emp_quad, ana_quad):
            counts[slot][key] = int(emp * trials)
            p = float(ana)
            sigma = math.sqrt(p * (1.0 - p) / trials)
            z = 0.0 if sigma == 0.0 else (float(emp) - p) / sigma
            z_scores[slot][key] = format_number(z)
            max_abs_z = max(max_abs_z, abs(z))
    return {
        "label": survey.label,
        "provenance": _provenance(exact, sha256=survey.sha256, gauge=gauge, seed=seed, trials=trials),
        "analytic": _table_dict(analytic),
        "empirical": _table_dict(empirical),
        "counts": counts,
        "z_scores": z_scores,
        "max_abs_z": format_number(max_abs_z),
    }


def params_from_dict(data: Mapping[str, Any], exact: bool = False) -> ModelParams:
    if not isinstance(data, Mapping):
        raise InputValidationError("params must be an object with the seven scalars")
    missing = [k for k in PARAM_NAMES if k not in data]
    if missing:
        raise InputValidationError(f"params is missing fields {missing}")
    extra = [k for k in data if k not in PARAM_NAMES]
    if extra:
        raise InputValidationError(f"params has unknown fields {extra}")
    return ModelParams(**{k: coerce(data[k], exact) for k in PARAM_NAMES})


def c_measurement_from_dict(
    data: Mapping[str, Any], exact: bool = False
) -> CMeasurement:
    if not isinstance(data, Mapping):
        raise InputValidationError("c must be an object describing the C measurement")
    known = {"cos_a", "cos_b", "cos_psi", "eps", "d", "confusing"}
    missing = [k for k in ("cos_a", "cos_b", "cos_psi") if k not in data]
    if missing:
        raise InputValidationError(f"c is missing fields {missing}")
    extra = [k for k in data if k not in known]
    if extra:
        raise InputValidationError(f"c has unknown fields {extra}")
    elastic = ElasticParams(
        coerce(data.get("eps", 1), exact), coerce(data.get("d", 0), exact)
    )
    confusing = data.get("confusing", True)
    if not isinstance(confusing, bool):
        raise InputValidationError("c.confusing must be true or false")
    return CMeasurement(
        cos_a=coerce(data["cos_a"], exact),
        cos_b=coerce(data["cos_b"], exact),
        cos_psi=coerce(data["cos_psi"], exact),
        elastic=elastic,
        confusing=confusing,
    )


def replicate_report(
    data: Mapping[str, Any], exact: bool = False, sha256: Optional[str] = None
) -> dict:
    """Outcome tree of a measurement sequence under a replicability policy."""
    for required in ("label", "params", "sequence"):
        if required not in data:
            raise InputValidationError(f"replicate input is missing field {required!r}")
    known = {"label", "params", "sequence", "policy", "c"}
    unknown = [k for k in data if k not in known]
    if unknown:
        raise InputValidationError(f"replicate input has unknown fields {unknown}")
    params = params_from_dict(data["params"], exact=exact)
    sequence = data["sequence"]
    if not isinstance(sequence, (list, tuple)) or not sequence:
        raise InputValidationError("sequence must be a non-empty list like [\"A\",\"B\",\"A\"]")
    policy: UpdatePolicy = data.get("policy", "minimal-truncation")
    check_choice(policy, POLICIES, "policy")
    c = None
    if data.get("c") is not None:
        c = c_measurement_from_dict(data["c"], exact=exact)
    tree = run_sequence(sequence, params, policy=policy, c=c)
    paths = [
        {"outcomes": list(outcomes), "probability": format_number(prob)}
        for outcomes, prob in tree.paths()
    ]
    replicates = all(
        prob == 0
        for outcomes, prob in tree.paths()
        if has_repeat_contradiction(outcomes, tree.sequence[: len(outcomes)])
    )
    return {
        "label": str(data["label"]),
        "provenance": _provenance(exact, sha256=sha256),
        "sequence": list(tree.sequence),
        "policy": policy,
        "paths": paths,
        "replicates": replicates,
    }


def ensemble_from_dict(
    data: Mapping[str, Any], exact: bool = False
) -> tuple[str, Ensemble]:
    for required in ("label", "angles", "respondents"):
        if required not in data:
            raise InputValidationError(f"ensemble input is missing field {required!r}")
    unknown = [k for k in data if k not in {"label", "angles", "respondents"}]
    if unknown:
        raise InputValidationError(f"ensemble input has unknown fields {unknown}")
    angles_raw = data["angles"]
    if not isinstance(angles_raw, Mapping):
        raise InputValidationError("angles must be an object with the three cosines")
    for required in ("cos_theta", "cos_theta_a", "cos_theta_b"):
        if required not in angles_raw:
            raise InputValidationError(f"angles is missing field {required!r}")
    extra = [k for k in angles_raw if k not in ("cos_theta", "cos_theta_a", "cos_theta_b")]
    if extra:
        raise InputValidationError(f"angles has unknown fields {extra}")
    angles = AngleTriple(
        coerce(angles_raw["cos_theta"], exact),
        coerce(angles_raw["cos_theta_a"], exact),
        coerce(angles_raw["cos_theta_b"], exact),
    )
    respondents = []
    raw_list = data["respondents"]
    if not isinstance(raw_list, (list, tuple)) or not raw_list:
        raise InputValidationError("respondents must be a non-empty list")
    for i, raw in enumerate(raw_list):
        if not isinstance(raw, Mapping):
            raise InputValidationError(f"respondent {i} must be an object")
        known = {"eps_a", "d_a", "eps_b", "d_b", "weight"}
        missing = [k for k in ("eps_a", "d_a", "eps_b", "d_b") if k not in raw]
        if missing:
            raise InputValidationError(f"respondent {i} is missing fields {missing}")
        extra = [k for k in raw if k not in known]
        if extra:
            raise InputValidationError(f"respondent {i} has unknown fields {extra}")
        respondents.append(
            Respondent(
                elastic_a=ElasticParams(
                    coerce(raw["eps_a"], exact), coerce(raw["d_a"], exact)
                ),
                elastic_b=ElasticParams(
                    coerce(raw["eps_b"], exact), coerce(raw["d_b"], exact)
                ),
                weight=None if raw.get("weight") is None else coerce(raw["weight"], exact),
            )
        )
    return str(data["label"]), Ensemble(respondents=tuple(respondents), angles=angles)


def average_report(
    data: Mapping[str, Any],
    gauge: Gauge,
    exact: bool = False,
    sha256: Optional[str] = None,
) -> dict:
    """Averaged ensemble table plus the effective refit under one gauge."""
    label, ensemble = ensemble_from_dict(data, exact=exact)
    tables = respondent_tables(ensemble)
    avg = averaged_table(ensemble)
    params = effective_refit(ensemble, gauge)
    report = {
        "label": label,
        "provenance": _provenance(exact, sha256=sha256, gauge=gauge),
        "respondent_tables": [_table_dict(t) for t in tables],
        "averaged_table": _table_dict(avg),
        "effective_params": _params_dict(params),
        "replicability_lifts_aba": replicability_lifts(
            ensemble, ("A", "B", "A"), policy="minimal-truncation"
        ),
    }
    if params.sensitivity_satisfied():
        report["round_trip_max_abs_error"] = format_number(
            _max_abs_difference(sequential_probs_closed_form(params), avg)
        )
    return report


_FIGURE_COLUMNS = ("element", "measurement", "position", "x1", "x2", "x3")


def figure_rows(params: ModelParams) -> list[tuple[str, str, str, str, str, str]]:
    """Geometric primitives of the fitted configuration, one row per point.

    Positions are scalar coordinates along the measurement axis; the 3-d
    point is position times the axis vector.  The state row carries the
    reconstructed unit vector itself.
    """
    psi, ay, by = reconstruct_state(params.angles)
    rows = []

    def add(element: str, measurement: str, position: Number, axis) -> None:
        p = float(position)
        # + 0.0 turns -0.0 into 0.0 so mirrored anchors print cleanly
        coords = (p * axis.x1 + 0.0, p * axis.x2 + 0.0, p * axis.x3 + 0.0)
        rows.append(
            (
                element,
                measurement,
                format_number(float(position)),
                *(format_number(c) for c in coords),
            )
        )

    for mid, axis, elastic, landing in (
        ("A", ay, params.elastic_a, params.cos_theta_a),
        ("B", by, params.elastic_b, params.cos_theta_b),
    ):
        add("anchor_yes", mid, 1, axis)
        add("anchor_no", mid, -1, axis)
        add("breakable_lo", mid, elastic.d - elastic.epsilon, axis)
        add("breakable_hi", mid, elastic.d + elastic.epsilon, axis)
        add("landing_initial", mid, landing, axis)
        add("landing_after_other_yes", mid, params.cos_theta, axis)
        add("landing_after_other_no", mid, -params.cos_theta, axis)
    rows.append(
        (
            "state",
            "psi",
            "",
            format_number(psi.x1),
            format_number(psi.x2),
            format_number(psi.x3),
        )
    )
    return rows


def figure_csv(params: ModelParams) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_FIGURE_COLUMNS)
    writer.writerows(figure_rows(params))
    return buf.getvalue()


def _svg_point(x: float, y: float) -> str:
    # SVG's y axis points down; the sphere's x2 points up
    return f"{x:.6f},{-y:.6f}"


def figure_svg(params: ModelParams) -> str:
    """Standalone vector drawing of the two elastic bands in the x1-x2 plane.

    Both measurement axes lie in the drawing plane by construction; the
    state generally does not, so only its in-plane projection is marked.
    """
    psi, ay, by = reconstruct_state(params.angles)

    def fmt(v: float) -> str:
        return f"{v:.6f}"

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.45 -1.45 2.9 2.9" '
        'width="540" height="540">',
        '<rect x="-1.45" y="-1.45" width="2.9" height="2.9" fill="white"/>',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#999999" '
        'stroke-width="0.012"/>',
    ]
    palette = {"A": "#1f6fb2", "B": "#b2521f"}
    for mid, axis, elastic, landing in (
        ("A", ay, params.elastic_a, params.cos_theta_a),
        ("B", by, params.elastic_b, params.cos_theta_b),
    ):
        color = palette[mid]
        x, y = float(axis.x1), float(axis.x2)
        lo = float(elastic.d - elastic.epsilon)
        hi = float(elastic.d + elastic.epsilon)
        parts.append(
            f'<line x1="{fmt(-x)}" y1="{fmt(y)}" x2="{fmt(x)}" y2="{fmt(-y)}" '
            f'stroke="{color}" stroke-width="0.012" opacity="0.45"/>'
        )
        parts.append(
            f'<line x1="{fmt(lo * x)}" y1="{fmt(-lo * y)}" x2="{fmt(hi * x)}" '
            f'y2="{fmt(-hi * y)}" stroke="{color}" stroke-width="0.045" '
            'stroke-linecap="round"/>'
        )
        for position, radius in (
            (float(landing), 0.035),
            (float(params.cos_theta), 0.02),
            (-float(params.cos_theta), 0.02),
        ):
            parts.append(
                f'<circle cx="{fmt(position * x)}" cy="{fmt(-position * y)}" '
                f'r="{radius}" fill="white" stroke="{color}" stroke-width="0.012"/>'
            )
        for position, anchor_label in ((1.0, "yes"), (-1.0, "no")):
            parts.append(
                f'<circle cx="{fmt(position * x)}" cy="{fmt(-position * y)}" '
                f'r="0.028" fill="{color}"/>'
            )
            lx, ly = 1.18 * position * x, 1.18 * position * y
            parts.append(
                f'<text x="{fmt(lx)}" y="{fmt(-ly)}" font-family="sans-serif" '
                f'font-size="0.1" fill="{color}" text-anchor="middle" '
                f'dominant-baseline="middle">{mid} {anchor_label}</text>'
            )
    px, py = float(psi.x1), float(psi.x2)
    parts.append(
        f'<path d="M {_svg_point(px - 0.035, py)} L {_svg_point(px + 0.035, py)} '
        f'M {_svg_point(px, py - 0.035)} L {_svg_point(px, py + 0.035)}" '
        'stroke="#222222" stroke-width="0.016"/>'
    )
    parts.append(
        f'<text x="{fmt(px + 0.06)}" y="{fmt(-(py + 0.06))}" '
        'font-family="sans-serif" font-size="0.1" fill="#222222">state</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def figure_outputs(survey: SurveyInput, gauge: Gauge, exact: bool = False) -> tuple[str, str]:
    """CSV of geometric primitives plus the SVG drawn from the same fit."""
    table = normalize_table(survey, exact=exact)
    params = resolve(extract_ratios(table), gauge)
    return figure_csv(params), figure_svg(params)


def report_to_json(report: Mapping[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _flatten(prefix: str, value: Any, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, Mapping):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, "" if value is None else str(value)))


def report_to_csv(report: Mapping[str, Any]) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("key", "value"))
    writer.writerows(rows)
    return buf.getvalue()
