"""Shared generators and comparison helpers for the test suite."""
from __future__ import annotations

import math
from fractions import Fraction

from elastiq.distributions import ElasticParams
from elastiq.forward import ModelParams, SeqProbTable
from elastiq.geometry import AngleTriple


def random_feasible_angles(rng) -> AngleTriple:
    """Angle triple realizable by unit vectors in the Bloch sphere.

    cos_theta_b is drawn inside the interval allowed by the other two
    cosines, so reconstruction never hits the infeasibility guard.
    """
    ct = rng.uniform(-0.95, 0.95)
    cta = rng.uniform(-0.95, 0.95)
    sin_theta = math.sqrt(1.0 - ct * ct)
    half_width = sin_theta * math.sqrt(1.0 - cta * cta)
    ctb = ct * cta + rng.uniform(-0.9, 0.9) * half_width
    return AngleTriple(ct, cta, ctb)


def random_sensitive_params(rng) -> ModelParams:
    """ModelParams whose landings sit strictly inside both breakable regions."""
    ct = rng.uniform(-0.5, 0.5)
    cta = rng.uniform(-0.5, 0.5)
    ctb = rng.uniform(-0.5, 0.5)
    params = []
    for landing in (cta, ctb):
        d = rng.uniform(-0.2, 0.2)
        # epsilon must cover +/-ct (second landings) and the first landing
        needed = max(abs(ct) + abs(d), abs(landing - d))
        hi = 1.0 - abs(d)
        eps = needed + (hi - needed) * rng.uniform(0.05, 0.95)
        params.append((eps, d))
    (eps_a, d_a), (eps_b, d_b) = params
    return ModelParams(eps_a, d_a, eps_b, d_b, ct, cta, ctb)


def exact_params(eps_a, d_a, eps_b, d_b, ct, cta, ctb) -> ModelParams:
    """ModelParams with every field coerced to an exact fraction."""
    vals = [Fraction(str(v)) for v in (eps_a, d_a, eps_b, d_b, ct, cta, ctb)]
    return ModelParams(*vals)


def quad_max_abs_diff(a, b) -> float:
    return max(abs(float(x) - float(y)) for x, y in zip(a, b))


def table_max_abs_diff(s: SeqProbTable, t: SeqProbTable) -> float:
    return max(quad_max_abs_diff(s.p_ab, t.p_ab), quad_max_abs_diff(s.p_ba, t.p_ba))


def params_max_abs_diff(m: ModelParams, n: ModelParams) -> float:
    fields = ("eps_a", "d_a", "eps_b", "d_b", "cos_theta", "cos_theta_a", "cos_theta_b")
    return max(abs(float(getattr(m, f)) - float(getattr(n, f))) for f in fields)


def symmetric_respondent(eps) -> tuple[ElasticParams, ElasticParams]:
    e = ElasticParams(eps, 0 * eps)
    return e, e
