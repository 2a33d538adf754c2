"""Elastic-band model of sequential two-outcome measurements.

The package computes forward probabilities for back-to-back yes/no
measurements on a two-level system, inverts observed probability tables into
model parameters in closed form, tests tables against quantum-theoretical
equalities, propagates record-keeping density updates through longer
measurement sequences, averages heterogeneous respondent populations, and
cross-checks everything by seeded Monte Carlo simulation.
"""
from .distributions import (
    NO,
    YES,
    Atom,
    BreakDensity,
    ElasticParams,
    Outcome,
    Segment,
    cdf,
    locally_uniform,
    pin,
    sample_break_point,
    sample_break_points,
    truncate_renormalize,
)
from .errors import (
    ClosedFormInvalidError,
    DegenerateDensityError,
    DegenerateGeometryError,
    DegenerateTableError,
    ElastiqError,
    EmptySupportError,
    GaugeInfeasibleError,
    InfeasibleGeometryError,
    InputValidationError,
    NormalizationRefusedError,
    NotFittedError,
    SensitivityWarning,
)
from .forward import (
    ORDERS,
    POLICIES,
    CMeasurement,
    ModelParams,
    Order,
    OutcomeNode,
    OutcomeTree,
    Quad,
    SeqProbTable,
    UpdatePolicy,
    run_sequence,
    sequential_probs_closed_form,
    sequential_probs_integral,
    simulate,
    single_outcome_prob,
)
from .geometry import AngleTriple, UnitVector3, angles_from_vectors, reconstruct_state
from .inverse import (
    GAUGE_KINDS,
    CompatibilityReport,
    Gauge,
    RatioSet,
    epsilon_bounds,
    extract_ratios,
    fit,
    quantum_compatibility,
    resolve,
)
from .io import (
    SurveyInput,
    fixture_path,
    load_fixture,
    load_survey,
    normalize_table,
    survey_from_dict,
)
from .model import SequentialModel
from .population import (
    Ensemble,
    Respondent,
    averaged_table,
    effective_refit,
    has_repeat_contradiction,
    replicability_lifts,
    respondent_tables,
    symmetry_breaking_check,
)
from .qtests import (
    Q1_MAX,
    Q2_MAX,
    Q3_MAX,
    Q_MAX,
    QTestReport,
    compatibility_from_table,
    q_equalities,
    qq_decomposition,
    qq_equality,
    quantum_test_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # distributions
    "Atom",
    "BreakDensity",
    "ElasticParams",
    "NO",
    "Outcome",
    "Segment",
    "YES",
    "cdf",
    "locally_uniform",
    "pin",
    "sample_break_point",
    "sample_break_points",
    "truncate_renormalize",
    # errors
    "ClosedFormInvalidError",
    "DegenerateDensityError",
    "DegenerateGeometryError",
    "DegenerateTableError",
    "ElastiqError",
    "EmptySupportError",
    "GaugeInfeasibleError",
    "InfeasibleGeometryError",
    "InputValidationError",
    "NormalizationRefusedError",
    "NotFittedError",
    "SensitivityWarning",
    # forward
    "CMeasurement",
    "ModelParams",
    "ORDERS",
    "Order",
    "OutcomeNode",
    "OutcomeTree",
    "POLICIES",
    "Quad",
    "SeqProbTable",
    "UpdatePolicy",
    "run_sequence",
    "sequential_probs_closed_form",
    "sequential_probs_integral",
    "simulate",
    "single_outcome_prob",
    # geometry
    "AngleTriple",
    "UnitVector3",
    "angles_from_vectors",
    "reconstruct_state",
    # inverse
    "CompatibilityReport",
    "GAUGE_KINDS",
    "Gauge",
    "RatioSet",
    "epsilon_bounds",
    "extract_ratios",
    "fit",
    "quantum_compatibility",
    "resolve",
    # io
    "SurveyInput",
    "fixture_path",
    "load_fixture",
    "load_survey",
    "normalize_table",
    "survey_from_dict",
    # model
    "SequentialModel",
    # population
    "Ensemble",
    "Respondent",
    "averaged_table",
    "effective_refit",
    "has_repeat_contradiction",
    "replicability_lifts",
    "respondent_tables",
    "symmetry_breaking_check",
    # qtests
    "Q1_MAX",
    "Q2_MAX",
    "Q3_MAX",
    "Q_MAX",
    "QTestReport",
    "compatibility_from_table",
    "q_equalities",
    "qq_decomposition",
    "qq_equality",
    "quantum_test_report",
]
