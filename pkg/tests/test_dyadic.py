from fractions import Fraction

import pytest
from hypothesis import given

from src.dyadic import (
    MINUS_ONE_EIGHTH,
    ONE_HALF,
    ONE_QUARTER,
    THREE_EIGHTHS,
    ZERO,
    Dyadic,
    cmp_abs,
)
from tests.strategies import dyadics


class TestNormalForm:
    def test_even_mantissa_is_reduced(self):
        value = Dyadic(12, -5)
        assert (value.mantissa, value.exponent) == (3, -3)
        assert value == THREE_EIGHTHS

    def test_zero_has_a_single_representation(self):
        assert Dyadic(0, -7) == ZERO
        assert Dyadic(0, -7).exponent == 0

    @given(dyadics())
    def test_mantissa_is_odd_unless_zero(self, value):
        assert value.mantissa == 0 or value.mantissa % 2 == 1

    def test_immutable(self):
        with pytest.raises(AttributeError):
            THREE_EIGHTHS.mantissa = 5


class TestArithmetic:
    def test_sums_and_products(self):
        assert THREE_EIGHTHS + Dyadic(1, -3) == ONE_HALF
        assert Dyadic(-3, -6) * THREE_EIGHTHS == Dyadic(-9, -9)
        assert THREE_EIGHTHS - ONE_HALF == MINUS_ONE_EIGHTH
        assert ONE_HALF * ONE_HALF == ONE_QUARTER
        assert THREE_EIGHTHS ** 2 == Dyadic(9, -6)

    def test_integers_mix_in(self):
        assert 1 - ONE_HALF == ONE_HALF
        assert 2 * ONE_QUARTER == ONE_HALF
        assert ONE_HALF + 1 == Dyadic(3, -1)

    @given(dyadics(), dyadics())
    def test_agrees_with_fraction(self, a, b):
        assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()
        assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()
        assert (a - b).to_fraction() == a.to_fraction() - b.to_fraction()

    @given(dyadics(), dyadics())
    def test_ordering_agrees_with_fraction(self, a, b):
        assert (a < b) == (a.to_fraction() < b.to_fraction())
        assert (a == b) == (a.to_fraction() == b.to_fraction())

    def test_hash_matches_int_and_fraction(self):
        assert hash(Dyadic(1)) == hash(1)
        assert hash(Dyadic(12)) == hash(12)
        assert hash(THREE_EIGHTHS) == hash(Fraction(3, 8))
        assert {Dyadic(3): "x"}[3] == "x"
        assert 3 in {Dyadic(3)}
        assert len({Dyadic(4), 4, Fraction(4)}) == 1

    @given(dyadics())
    def test_hash_agrees_with_fraction(self, a):
        assert hash(a) == hash(a.to_fraction())

    def test_non_dyadic_fraction_compares(self):
        assert (ONE_HALF == Fraction(1, 3)) is False
        assert ONE_HALF != Fraction(1, 3)
        assert ONE_HALF > Fraction(1, 3)
        assert THREE_EIGHTHS < Fraction(2, 5)
        assert ONE_HALF == Fraction(1, 2)

    def test_non_dyadic_fraction_arithmetic_refused(self):
        with pytest.raises(ValueError):
            ONE_HALF + Fraction(1, 3)

    def test_halve_and_scale(self):
        assert THREE_EIGHTHS.halve() == Dyadic(3, -4)
        assert THREE_EIGHTHS.scale2(3) == Dyadic(3)

    def test_negative_power_refused(self):
        with pytest.raises(ValueError):
            ONE_HALF ** -1

    def test_cmp_abs(self):
        assert cmp_abs(Dyadic(-3, -6), Dyadic(9, -6)) == -1
        assert cmp_abs(Dyadic(-3, -3), THREE_EIGHTHS) == 0
        assert cmp_abs(ONE_HALF, MINUS_ONE_EIGHTH) == 1


class TestRendering:
    def test_exact_string(self):
        assert str(Dyadic(-3, -6)) == "-3/2^6"
        assert str(THREE_EIGHTHS) == "3/2^3"
        assert str(Dyadic(5)) == "5"
        assert str(Dyadic(3, 2)) == "12"

    def test_decimal_string(self):
        assert Dyadic(-3, -6).to_decimal_string() == "-0.046875"
        assert THREE_EIGHTHS.to_decimal_string() == "0.375"
        assert Dyadic(7).to_decimal_string() == "7"

    @given(dyadics())
    def test_parse_inverts_str(self, value):
        assert Dyadic.parse(str(value)) == value

    def test_parse_plain_denominator(self):
        assert Dyadic.parse("3/8") == THREE_EIGHTHS
        assert Dyadic.parse("-12") == Dyadic(-12)

    def test_parse_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            Dyadic.parse("1/3")
        with pytest.raises(ValueError):
            Dyadic.parse("three eighths")

    def test_from_fraction(self):
        assert Dyadic.from_fraction(Fraction(15, 512)) == Dyadic(15, -9)
        with pytest.raises(ValueError):
            Dyadic.from_fraction(Fraction(1, 6))
