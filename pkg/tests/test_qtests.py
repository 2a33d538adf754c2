from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from elastiq.errors import InputValidationError
from elastiq.forward import ModelParams, Quad, SeqProbTable, sequential_probs_closed_form
from elastiq.qtests import (
    Q1_MAX,
    Q2_MAX,
    Q3_MAX,
    Q_MAX,
    compatibility_from_table,
    q_equalities,
    qq_decomposition,
    qq_equality,
    quantum_test_report,
)

from helpers import random_feasible_angles, random_sensitive_params


class TestQQEquality:
    def test_clinton_gore_value(self, cg_table):
        assert qq_equality(cg_table) == Fraction(-2, 625)
        assert float(qq_equality(cg_table)) == -0.0032

    def test_rose_jackson_value(self, rj_table):
        q = qq_equality(rj_table)
        assert q == Fraction(757, 5000)
        assert float(q) == 0.1514

    def test_born_tables_null(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            angles = random_feasible_angles(rng)
            m = ModelParams(
                1.0, 0.0, 1.0, 0.0,
                angles.cos_theta, angles.cos_theta_a, angles.cos_theta_b,
            )
            t = sequential_probs_closed_form(m)
            assert abs(qq_equality(t)) <= 1e-12


class TestDecomposition:
    def test_clinton_gore_terms(self, cg_params):
        indeterminism, asymmetry = qq_decomposition(cg_params)
        assert indeterminism == Fraction(223284032117, 4705624699776)
        assert asymmetry == Fraction(148963769472677, 2941015437360000)

    def test_rose_jackson_terms(self, rj_params):
        indeterminism, asymmetry = qq_decomposition(rj_params)
        assert indeterminism == Fraction(4600607215157, 55872032066760)
        assert asymmetry == Fraction(-60287788121101, 873000501043125)
        assert float(indeterminism) == pytest.approx(0.0823, abs=5e-4)
        assert float(asymmetry) == pytest.approx(-0.0691, abs=5e-4)

    def test_quantum_params_vanish(self):
        m = ModelParams(1, 0, 1, 0, Fraction(3, 10), Fraction(1, 10), Fraction(1, 5))
        assert qq_decomposition(m) == (0, 0)

    def test_difference_equals_table_q(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            m = random_sensitive_params(rng)
            indeterminism, asymmetry = qq_decomposition(m)
            q = qq_equality(sequential_probs_closed_form(m))
            assert abs((indeterminism - asymmetry) - q) <= 1e-12


class TestQEqualities:
    def test_clinton_gore_values(self, cg_table):
        q1, q2, q3 = q_equalities(cg_table)
        assert q1 == Fraction(175279, 6250000)
        assert q2 == Fraction(-1841511, 25000000)
        assert q3 == Fraction(1512879, 50000000)

    def test_q3_is_direct_arithmetic(self, cg_table):
        _, _, q3 = q_equalities(cg_table)
        direct = (
            Fraction("0.1767") * Fraction("0.2129")
            - Fraction("0.2887") * Fraction("0.0255")
        )
        assert q3 == direct

    def test_born_tables_null(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            angles = random_feasible_angles(rng)
            m = ModelParams(
                1.0, 0.0, 1.0, 0.0,
                angles.cos_theta, angles.cos_theta_a, angles.cos_theta_b,
            )
            values = q_equalities(sequential_probs_closed_form(m))
            assert all(abs(v) <= 1e-12 for v in values)


class TestReport:
    def test_percent_of_max(self, cg_table):
        report = quantum_test_report(cg_table)
        assert report.pct_of_max == (0.32, 11.0, 29.0, 3.0)

    def test_with_params_attaches_decomposition(self, cg_table, cg_params):
        report = quantum_test_report(cg_table, params=cg_params)
        assert report.rel_indeterminism == Fraction(223284032117, 4705624699776)
        assert report.rel_asymmetry == Fraction(148963769472677, 2941015437360000)

    def test_mismatched_params_rejected(self, cg_table, rj_params):
        with pytest.raises(InputValidationError):
            quantum_test_report(cg_table, params=rj_params)

    def test_compatibility_from_table(self, cg_table):
        assert not compatibility_from_table(cg_table).compatible


def unit_quad(values):
    yy, yn, ny = values
    total = yy + yn + ny
    if total > 1:
        yy, yn, ny = yy / total, yn / total, ny / total
        total = yy + yn + ny
    return Quad(yy, yn, ny, 1 - total)


@given(
    ab=st.tuples(*[st.floats(0, 1) for _ in range(3)]),
    ba=st.tuples(*[st.floats(0, 1) for _ in range(3)]),
)
def test_bounds_on_arbitrary_tables(ab, ba):
    t = SeqProbTable(unit_quad(ab), unit_quad(ba))
    q = qq_equality(t)
    q1, q2, q3 = q_equalities(t)
    slack = 1e-9
    assert abs(q) <= Q_MAX + slack
    assert abs(q1) <= Q1_MAX + slack
    assert abs(q2) <= Q2_MAX + slack
    assert abs(q3) <= Q3_MAX + slack
