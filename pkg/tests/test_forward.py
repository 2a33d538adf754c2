from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elastiq.distributions import ElasticParams, locally_uniform, pin
from elastiq.errors import (
    ClosedFormInvalidError,
    EmptySupportError,
    InputValidationError,
)
from elastiq.forward import (
    CMeasurement,
    ModelParams,
    Quad,
    SeqProbTable,
    run_sequence,
    sequential_probs_closed_form,
    sequential_probs_integral,
    simulate,
    single_outcome_prob,
)
from elastiq.geometry import AngleTriple

from helpers import (
    exact_params,
    quad_max_abs_diff,
    random_sensitive_params,
    table_max_abs_diff,
)

QUANTUM = ModelParams(1.0, 0.0, 1.0, 0.0, 0.3, 0.1, 0.2)


class TestSingleOutcomeProb:
    def test_born_limit(self):
        p_yes, p_no = single_outcome_prob(locally_uniform(ElasticParams(1, 0)), Fraction(1, 5))
        assert p_yes == Fraction(3, 5) and p_no == Fraction(2, 5)

    def test_full_mass_below_landing_one(self):
        for rho in (locally_uniform(ElasticParams(0.3, 0.1)), pin("no")):
            assert single_outcome_prob(rho, 1) == (1, 0)

    def test_landing_range_checked(self):
        with pytest.raises(InputValidationError):
            single_outcome_prob(pin("yes"), 1.5)


class TestClosedForm:
    def test_quantum_params_factorize(self):
        t = sequential_probs_closed_form(QUANTUM)
        assert t.p_ab.yy == pytest.approx(0.25 * 1.3 * 1.1, abs=1e-15)
        assert t.p_ba.yy == pytest.approx(0.25 * 1.3 * 1.2, abs=1e-15)

    def test_requires_sensitivity(self):
        bad = ModelParams(0.1, 0.0, 1.0, 0.0, 0.3, 0.5, 0.2)
        with pytest.raises(ClosedFormInvalidError):
            sequential_probs_closed_form(bad)

    def test_exact_unitarity(self):
        m = exact_params("0.5", "0.1", "0.6", "-0.2", "0.3", "0.2", "0.1")
        t = sequential_probs_closed_form(m)
        assert t.p_ab.total() == 1 and t.p_ba.total() == 1
        assert t.is_exact()

    def test_marginal_consistency(self):
        m = exact_params("0.5", "0.1", "0.6", "-0.2", "0.3", "0.2", "0.1")
        t = sequential_probs_closed_form(m)
        p_yes, _ = single_outcome_prob(m.rho_a(), m.cos_theta_a)
        assert t.first_yes_a() == p_yes


class TestIntegralEquivalence:
    def test_matches_closed_form_randomly(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            m = random_sensitive_params(rng)
            analytic = sequential_probs_closed_form(m)
            integral = sequential_probs_integral(m.rho_a(), m.rho_b(), m.angles)
            assert table_max_abs_diff(analytic, integral) <= 1e-12

    def test_valid_outside_sensitivity(self):
        # landing below the A support: the first outcome is deterministic no
        m = ModelParams(0.1, 0.5, 1.0, 0.0, 0.45, -0.2, 0.2)
        t = sequential_probs_integral(m.rho_a(), m.rho_b(), m.angles)
        assert t.p_ab.yy == 0 and t.p_ab.yn == 0
        assert t.p_ab.total() == 1

    def test_pinned_first_measurement(self):
        angles = AngleTriple(0.3, 0.1, 0.2)
        rho_b = locally_uniform(ElasticParams(0.8, 0.0))
        t = sequential_probs_integral(pin("yes"), rho_b, angles)
        p_by_given_ay, _ = single_outcome_prob(rho_b, angles.cos_theta)
        assert t.p_ab == Quad(p_by_given_ay, 1 - p_by_given_ay, 0.0, 0.0)


class TestSeqProbTable:
    def test_rejects_non_unit_sum(self):
        with pytest.raises(InputValidationError):
            SeqProbTable(
                Quad(0.5, 0.5, 0.5, 0.5), Quad(0.25, 0.25, 0.25, 0.25)
            )

    def test_rejects_out_of_range_entry(self):
        with pytest.raises(InputValidationError):
            SeqProbTable(
                Quad(1.2, -0.2, 0.0, 0.0), Quad(0.25, 0.25, 0.25, 0.25)
            )

    def test_first_yes_marginals(self):
        t = SeqProbTable(Quad(0.4, 0.1, 0.2, 0.3), Quad(0.3, 0.3, 0.2, 0.2))
        assert t.first_yes_a() == pytest.approx(0.5)
        assert t.first_yes_b() == pytest.approx(0.6)


class TestSimulate:
    def test_seeded_determinism(self):
        a = simulate(QUANTUM, "AB", 20000, seed=123)
        b = simulate(QUANTUM, "AB", 20000, seed=123)
        assert a == b

    def test_counts_are_exact_fractions(self):
        t = simulate(QUANTUM, "AB", 1000, seed=0)
        assert t.is_exact()
        assert t.p_ab.total() == 1 and t.p_ba.total() == 1
        assert all(v.denominator in (1, 2, 4, 5, 8, 10, 16, 20, 25, 40, 50, 100, 125,
                                     200, 250, 500, 1000) for v in t.p_ab)

    def test_order_changes_stream_consumption(self):
        ab_first = simulate(QUANTUM, "AB", 5000, seed=9)
        ba_first = simulate(QUANTUM, "BA", 5000, seed=9)
        # same seed, different stream layout: tables must not be identical
        assert ab_first != ba_first

    def test_deterministic_model_gives_exact_frequencies(self):
        # both landings fall outside both supports: every trial is (no, no)
        m = ModelParams(0.05, 0.9, 0.05, 0.9, 0.5, 0.4, 0.4)
        t = simulate(m, "AB", 2000, seed=4)
        assert t.p_ab.nn == 1 and t.p_ba.nn == 1

    def test_matches_analytic_within_four_sigma(self):
        trials = 100000
        t = simulate(QUANTUM, "AB", trials, seed=2718)
        analytic = sequential_probs_closed_form(QUANTUM)
        for emp, p in zip(t.p_ab + t.p_ba, analytic.p_ab + analytic.p_ba):
            sigma = np.sqrt(p * (1 - p) / trials)
            assert abs(float(emp) - p) <= 4 * sigma

    def test_trials_validated(self):
        with pytest.raises(InputValidationError):
            simulate(QUANTUM, "AB", 0, seed=1)

    def test_order_validated(self):
        with pytest.raises(InputValidationError):
            simulate(QUANTUM, "XY", 10, seed=1)


class TestRunSequence:
    @pytest.mark.parametrize("policy", ["minimal-truncation", "dirac-pinning", "none"])
    def test_immediate_repeat_replicates(self, policy):
        m = exact_params("0.5", "0.1", "0.6", "-0.2", "0.3", "0.2", "0.1")
        tree = run_sequence(["A", "A"], m, policy=policy)
        probs = dict(tree.paths())
        p_yes, _ = single_outcome_prob(m.rho_a(), m.cos_theta_a)
        assert probs[("yes", "yes")] == p_yes
        assert probs[("no", "no")] == 1 - p_yes
        assert probs.get(("yes", "no"), 0) == 0
        assert probs.get(("no", "yes"), 0) == 0

    @pytest.mark.parametrize("policy", ["minimal-truncation", "dirac-pinning"])
    def test_aba_replicates(self, policy, cg_params):
        tree = run_sequence(["A", "B", "A"], cg_params, policy=policy)
        for outcomes, prob in tree.paths():
            if len(outcomes) == 3 and outcomes[0] != outcomes[2]:
                assert prob == 0
        assert tree.conditional(("yes", "yes"))["yes"] == 1

    def test_aba_first_pass_probability_unchanged(self, cg_params):
        tree = run_sequence(["A", "B", "A"], cg_params)
        t = sequential_probs_closed_form(cg_params)
        assert tree.path_probability(("yes", "yes", "yes")) == t.p_ab.yy
        assert tree.path_probability(("yes", "no", "yes")) == t.p_ab.yn

    def test_none_policy_breaks_replicability(self, cg_params):
        tree = run_sequence(["A", "B", "A"], cg_params, policy="none")
        assert tree.path_probability(("yes", "yes", "no")) > 0

    @pytest.mark.parametrize("policy", ["minimal-truncation", "dirac-pinning"])
    @pytest.mark.parametrize("sequence", [list("ABAB"), list("ABBA"), list("BABA")])
    def test_interleavings_replicate(self, policy, sequence):
        rng = np.random.default_rng(13)
        for _ in range(25):
            m = random_sensitive_params(rng)
            tree = run_sequence(sequence, m, policy=policy)
            first = {}
            for outcomes, prob in tree.paths():
                if prob == 0:
                    continue
                first.clear()
                for mid, out in zip(sequence, outcomes):
                    if mid in first:
                        assert out == first[mid], (sequence, outcomes)
                    else:
                        first[mid] = out

    def test_conditional_on_zero_prefix_raises(self, cg_params):
        tree = run_sequence(["A", "B", "A"], cg_params)
        with pytest.raises(EmptySupportError):
            tree.conditional(("yes", "yes", "no"))

    def test_conditional_on_full_path_raises(self, cg_params):
        tree = run_sequence(["A", "A"], cg_params)
        with pytest.raises(InputValidationError):
            tree.conditional(("yes", "yes"))

    def test_c_requires_axis(self, cg_params):
        with pytest.raises(InputValidationError):
            run_sequence(["A", "B", "C"], cg_params)

    def test_unknown_measurement_id(self, cg_params):
        with pytest.raises(InputValidationError):
            run_sequence(["A", "D"], cg_params)

    def test_confusing_c_reopens_repeat(self, cg_params):
        lo = float(cg_params.d_a - cg_params.eps_a)
        c = CMeasurement(
            cos_a=(lo + float(cg_params.cos_theta)) / 2, cos_b=0.2, cos_psi=0.1
        )
        tree = run_sequence(["A", "B", "C", "A"], cg_params, c=c)
        after_cy = tree.conditional(("yes", "yes", "yes"))
        assert 0 < after_cy["yes"] < 1
        after_cn = tree.conditional(("yes", "yes", "no"))
        assert after_cn["yes"] == 1

    def test_non_confusing_c_preserves_replicability(self, cg_params):
        lo = float(cg_params.d_a - cg_params.eps_a)
        c = CMeasurement(
            cos_a=(lo + float(cg_params.cos_theta)) / 2,
            cos_b=0.2,
            cos_psi=0.1,
            confusing=False,
        )
        tree = run_sequence(["A", "B", "C", "A"], cg_params, c=c)
        assert tree.conditional(("yes", "yes", "yes"))["yes"] == 1
        assert tree.conditional(("yes", "yes", "no"))["yes"] == 1


@st.composite
def sensitive_params(draw):
    ct = draw(st.floats(-0.5, 0.5))
    cta = draw(st.floats(-0.5, 0.5))
    ctb = draw(st.floats(-0.5, 0.5))
    sides = []
    for landing in (cta, ctb):
        d = draw(st.floats(-0.2, 0.2))
        needed = max(abs(ct) + abs(d), abs(landing - d))
        hi = 1.0 - abs(d)
        eps = needed + (hi - needed) * draw(st.floats(0.05, 0.95))
        sides.append((eps, d))
    (ea, da), (eb, db) = sides
    return ModelParams(ea, da, eb, db, ct, cta, ctb)


@given(m=sensitive_params())
@settings(max_examples=150)
def test_closed_form_integral_equivalence_property(m):
    analytic = sequential_probs_closed_form(m)
    integral = sequential_probs_integral(m.rho_a(), m.rho_b(), m.angles)
    assert table_max_abs_diff(analytic, integral) <= 1e-12


@given(m=sensitive_params())
@settings(max_examples=100)
def test_unitarity_property(m):
    t = sequential_probs_closed_form(m)
    assert t.p_ab.total() == pytest.approx(1.0, abs=1e-12)
    assert t.p_ba.total() == pytest.approx(1.0, abs=1e-12)
