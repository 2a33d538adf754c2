from fractions import Fraction

import pytest

from elastiq._numeric import (
    all_exact,
    coerce,
    exact_number,
    format_number,
    is_exact,
    one_like,
    round_to_sig_figs,
)
from elastiq.errors import InputValidationError


class TestExactNumber:
    def test_decimal_string(self):
        assert exact_number("0.4899") == Fraction(4899, 10000)

    def test_rational_string(self):
        assert exact_number("1/3") == Fraction(1, 3)

    def test_float_uses_decimal_repr(self):
        assert exact_number(0.25) == Fraction(1, 4)
        assert exact_number(0.1) == Fraction(1, 10)

    def test_int_and_fraction_pass_through(self):
        assert exact_number(3) == Fraction(3)
        assert exact_number(Fraction(7, 5)) == Fraction(7, 5)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), "abc", "1/0", None, True])
    def test_rejects_non_numbers(self, bad):
        with pytest.raises(InputValidationError):
            exact_number(bad)


class TestCoerce:
    def test_exact_mode(self):
        assert coerce("0.3", True) == Fraction(3, 10)
        assert isinstance(coerce(0.3, True), Fraction)

    def test_float_mode(self):
        value = coerce("0.3", False)
        assert isinstance(value, float) and value == 0.3

    def test_exactness_predicates(self):
        assert is_exact(Fraction(1, 2)) and is_exact(4)
        assert not is_exact(0.5)
        assert not is_exact(True)
        assert all_exact(Fraction(1), 2)
        assert not all_exact(Fraction(1), 0.5)


class TestOneLike:
    def test_exact_when_all_exact(self):
        one = one_like(Fraction(1, 3), 2)
        assert one == 1 and isinstance(one, Fraction)

    def test_float_when_any_float(self):
        one = one_like(Fraction(1, 3), 0.5)
        assert one == 1.0 and isinstance(one, float)


class TestFormatNumber:
    def test_fraction(self):
        assert format_number(Fraction(3, 4)) == "3/4"
        assert format_number(Fraction(-2, 625)) == "-2/625"

    def test_int_as_unit_fraction(self):
        assert format_number(7) == "7/1"

    def test_float_round_trips(self):
        for value in (0.1, 0.4899, 1 / 3, -0.0772):
            assert float(format_number(value)) == value

    def test_rejects_bool(self):
        with pytest.raises(InputValidationError):
            format_number(True)


class TestRoundToSigFigs:
    @pytest.mark.parametrize(
        "value,expected",
        [(0.0302576, 0.03), (11.23, 11.0), (29.15, 29.0), (0.3161, 0.32), (15.14, 15.0)],
    )
    def test_two_figures(self, value, expected):
        assert round_to_sig_figs(value, 2) == expected
