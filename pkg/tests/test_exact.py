import math

import pytest
from hypothesis import given, settings, strategies as st

from cfrenorm.exact import (
    ExactNumber,
    GOLDEN,
    LEFT,
    ONE,
    RIGHT,
    RadicandError,
    SidedPoint,
    ZERO,
    complement_digits,
    evaluate_cf,
    gauss_step,
    in_closed_arc,
    parse_exact,
    regular_cf_digits,
    sided,
    sqrt_fixed_point,
)

E = ExactNumber.rational
Q = ExactNumber.quadratic


class TestCanonicalForm:
    def test_rational_reduction(self):
        assert E(4, 6) == E(2, 3)
        assert E(-4, -6) == E(2, 3)
        assert E(3, -6) == E(-1, 2)
        x = E(2, 3)
        assert (x.a, x.b, x.c, x.d) == (2, 0, 3, 1)

    def test_quadratic_reduction(self):
        x = Q(2, 4, 6, 5)
        assert (x.a, x.b, x.c, x.d) == (1, 2, 3, 5)

    def test_square_factors_move_out_of_radical(self):
        assert Q(0, 1, 1, 8) == Q(0, 2, 1, 2)
        assert Q(0, 1, 1, 12) == Q(0, 2, 1, 3)

    def test_perfect_square_radicand_collapses_to_rational(self):
        x = Q(1, 3, 2, 9)  # (1 + 3*3)/2
        assert x.is_rational and x == E(5)

    def test_normalization_idempotent(self):
        x = Q(2, 4, 6, 20)
        y = Q(x.a, x.b, x.c, x.d)
        assert (x.a, x.b, x.c, x.d) == (y.a, y.b, y.c, y.d)

    def test_oversized_radicand_rejected(self):
        with pytest.raises(RadicandError):
            Q(0, 1, 1, (10**6 + 3) ** 2 * (10**6 + 33))

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            E(1, 0)


class TestArithmetic:
    def test_field_ops_rational(self):
        assert E(1, 3) + E(1, 6) == E(1, 2)
        assert E(2, 5) * E(5, 2) == ONE
        assert ONE - E(2, 5) == E(3, 5)
        assert E(2, 5).inverse() == E(5, 2)

    def test_field_ops_quadratic(self):
        g = GOLDEN
        assert g * g == ONE - g  # x^2 = 1 - x for the golden rotation
        assert g.inverse() == g + 1
        assert (g + g) / 2 == g

    def test_closure_same_radicand(self):
        r2 = Q(0, 1, 1, 2)
        assert (1 + r2) * (1 - r2) == E(-1)
        assert (1 + r2).inverse() == r2 - 1

    def test_incompatible_radicands(self):
        with pytest.raises(ValueError):
            Q(0, 1, 1, 2) + Q(0, 1, 1, 3)

    def test_int_coercion(self):
        assert 1 - E(2, 5) == E(3, 5)
        assert 3 * E(1, 6) == E(1, 2)


class TestOrder:
    def test_sign_opposite_coefficients(self):
        assert Q(-7, 5, 1, 2).sign() == 1  # 5*sqrt(2) = 7.07 > 7
        assert Q(-8, 5, 1, 2).sign() == -1
        assert Q(7, -5, 1, 2).sign() == -1
        assert Q(8, -5, 1, 2).sign() == 1

    def test_compare_rational_quadratic(self):
        assert GOLDEN < E(2, 3)
        assert GOLDEN > E(3, 5)

    def test_floor(self):
        assert E(7, 2).floor() == 3
        assert E(-7, 2).floor() == -4
        assert Q(0, 1, 1, 2).floor() == 1
        assert Q(0, -1, 1, 2).floor() == -2
        assert GOLDEN.floor() == 0
        assert (GOLDEN + 5).floor() == 5
        assert GOLDEN.inverse().floor() == 1

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
    def test_floor_matches_integer_division(self, p, q):
        assert E(p, q).floor() == p // q

    def test_frac(self):
        assert E(7, 2).frac() == E(1, 2)
        assert (-E(2, 5)).frac() == E(3, 5)


class TestTextForm:
    def test_round_trip_examples(self):
        for s in ["2/5", "-3/7", "0/1", "(-1+1*sqrt(5))/2", "(3-2*sqrt(7))/5"]:
            assert str(parse_exact(s)) == s

    @given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
    def test_round_trip_rational(self, p, q):
        x = E(p, q)
        assert parse_exact(str(x)) == x

    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 50),
           st.integers(2, 200))
    def test_round_trip_quadratic(self, a, b, c, d):
        x = Q(a, b, c, d)
        assert parse_exact(str(x)) == x

    def test_parse_rejects_junk(self):
        with pytest.raises(ValueError):
            parse_exact("sqrt(2)")


class TestGaussStep:
    def test_examples(self):
        assert gauss_step(E(2, 5)) == (2, E(1, 2))
        assert gauss_step(E(1, 2)) == (2, ZERO)
        d, t = gauss_step(GOLDEN)
        assert d == 1 and t == GOLDEN

    def test_domain_errors(self):
        for bad in [ZERO, ONE, E(3, 2), E(-1, 2)]:
            with pytest.raises(ValueError):
                gauss_step(bad)

    def test_quadratic_periodicity_thousand_iterations(self):
        for a in (1, 2, 5):
            x = sqrt_fixed_point(a)
            cur = x
            for _ in range(1000):
                d, cur = gauss_step(cur)
                assert d == a and cur == x


class TestRegularDigits:
    def test_examples(self):
        assert regular_cf_digits(E(2, 5), 4) == [2, 2]
        assert regular_cf_digits(GOLDEN, 5) == [1, 1, 1, 1, 1]
        assert regular_cf_digits(E(1, 3), 3) == [3]

    @given(st.integers(1, 10**6), st.integers(2, 10**6))
    @settings(max_examples=200)
    def test_evaluate_round_trip(self, p, q):
        if p >= q:
            p, q = q, p + q  # force p/q into (0, 1)
        x = E(p, q)
        assert evaluate_cf(regular_cf_digits(x, 200)) == x

    def test_terminating_normal_form_last_digit_at_least_two(self):
        for p, q in [(2, 5), (3, 7), (5, 13), (13, 21), (1, 2), (7, 9)]:
            digits = regular_cf_digits(E(p, q), 100)
            if len(digits) > 1:
                assert digits[-1] >= 2


class TestComplement:
    def test_examples(self):
        assert complement_digits([2, 2]) == [1, 1, 2]
        assert complement_digits([1, 2, 7]) == [3, 7]

    def test_values_agree(self):
        for digits in [[2, 2], [1, 2, 7], [3, 1, 4], [5], [2], [1, 5]]:
            x = evaluate_cf(digits)
            assert evaluate_cf(complement_digits(digits)) == ONE - x

    @given(st.integers(1, 10**5), st.integers(2, 10**5))
    @settings(max_examples=200)
    def test_involution_within_normal_form(self, p, q):
        if p >= q:
            p, q = q, p + q
        digits = regular_cf_digits(E(p, q), 200)
        assert complement_digits(complement_digits(digits)) == digits

    def test_errors(self):
        with pytest.raises(ValueError):
            complement_digits([])
        with pytest.raises(ValueError):
            complement_digits([1])
        with pytest.raises(ValueError):
            complement_digits([2, 0])


class TestSidedPoint:
    def test_ordering_left_below_right(self):
        v = E(1, 3)
        assert SidedPoint(v, LEFT) < SidedPoint(v, RIGHT)
        assert sided(E(1, 4)) < SidedPoint(v, LEFT)

    def test_circle_normalization(self):
        assert SidedPoint(ZERO, LEFT) == SidedPoint(ONE, LEFT)
        assert SidedPoint(ONE, RIGHT) == SidedPoint(ZERO, RIGHT)
        assert SidedPoint(ZERO, RIGHT) < SidedPoint(ONE, LEFT)

    def test_rotation_carries_side(self):
        x = E(2, 5)
        p = SidedPoint(ONE - x, LEFT).rotate(x)
        assert p == SidedPoint(ONE, LEFT)  # lands on the top of the circle
        q = SidedPoint(ONE - x, RIGHT).rotate(x)
        assert q == SidedPoint(ZERO, RIGHT)

    def test_arc_membership_disjoint_cover(self):
        x = E(2, 5)
        split = ONE - x
        for p in [sided(ZERO), sided(E(1, 5)), SidedPoint(split, LEFT),
                  SidedPoint(split, RIGHT), sided(E(7, 10)), SidedPoint(ONE, LEFT)]:
            low = in_closed_arc(p, ZERO, split)
            high = in_closed_arc(p, split, ONE)
            assert low != high  # the sided intervals [0,1-x], [1-x,1] partition

    def test_value_range_checked(self):
        with pytest.raises(ValueError):
            SidedPoint(E(3, 2))

    def test_approx_float_reporting(self):
        assert math.isclose(GOLDEN.approx_float(), (5**0.5 - 1) / 2)
