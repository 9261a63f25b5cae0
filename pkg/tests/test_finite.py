from fractions import Fraction

import pytest

from core.errors import PoleError, PreconditionError, UnsupportedWindowError
from core.hurwitz.cyclotomic import CyclotomicNumber
from core.hurwitz.finite import eval_finite, semi_infinite_value, truncated_zeta, window_value
from core.hurwitz.identities import (
    check_antipode,
    check_decomposition,
    check_decomposition_point,
    check_expansion,
    check_reflection,
    check_translation,
    check_truncation,
    expansion_coeffs,
)
from core.indices import ColorVector
from core.models import IntervalSpec
from core.numeric.mzv import zeta
from core.series.expansion import expansion_at, is_pole, laurent_at, taylor_at
from core.series.residues import inverse_power_expand, residue_at


def window(m1, m2, closed=False):
    return IntervalSpec(m1=m1, m2=m2, right_closed=closed)


class TestEvalFinite:
    def test_strict_sum(self):
        assert eval_finite((1, 2), window(0, 4)) == Fraction(5, 12)

    def test_star_right_closed(self):
        assert eval_finite((1, 1), window(0, 2, closed=True), star=True) == Fraction(7, 4)

    def test_shifted(self):
        assert eval_finite((2,), window(0, 3), s=Fraction(1, 2)) == Fraction(136, 225)

    def test_single_term(self):
        assert eval_finite((1,), window(0, 2)) == 1

    def test_empty_range(self):
        assert eval_finite((3, 1), window(0, 1)) == 0

    def test_empty_index(self):
        assert eval_finite((), window(-4, 5)) == 1

    def test_depth_exceeds_points(self):
        assert eval_finite((1, 1, 1), window(0, 3)) == 0

    def test_pole_inside_window(self):
        with pytest.raises(PoleError):
            eval_finite((1,), window(-2, 2), s=1)

    def test_infinite_window(self):
        with pytest.raises(UnsupportedWindowError):
            eval_finite((2,), IntervalSpec(m1=0))

    def test_alternating_colors(self):
        value = eval_finite((1,), window(0, 3), colors=ColorVector(level=2, exponents=(1,)))
        assert isinstance(value, CyclotomicNumber)
        assert value.rational_value() == Fraction(-1, 2)

    def test_level_one_colors_are_plain(self):
        plain = eval_finite((1, 2), window(0, 4), colors=ColorVector(level=1, exponents=(0, 0)))
        assert plain == Fraction(5, 12)

    def test_truncated(self):
        assert truncated_zeta((1, 2), 4) == Fraction(5, 12)
        assert truncated_zeta((2,), 1) == 0

    def test_window_value_without_points(self):
        assert window_value((), 3, 3) == 1
        assert window_value((2,), 3, 3) == 0


class TestSemiInfinite:
    def test_right_tail_matches_zeta(self):
        value = semi_infinite_value((2,), IntervalSpec(m1=0))
        assert value.contains(zeta((2,)))

    def test_left_window_reflects(self):
        # sum over n < 0 of n^-2 equals zeta(2)
        value = semi_infinite_value((2,), IntervalSpec(m1=None, m2=0))
        assert abs(value.mid - zeta((2,)).mid) < 1e-30

    def test_window_through_origin(self):
        with pytest.raises(PoleError):
            semi_infinite_value((2,), IntervalSpec(m1=-1))


class TestStructuralIdentities:
    def test_translation(self):
        assert check_translation((2, 1), window(-3, 4), Fraction(1, 3), 2).holds

    def test_colored_translation(self):
        colors = ColorVector(level=3, exponents=(1, 2))
        assert check_translation((1, 2), window(0, 5), Fraction(1, 2), -3, colors).holds

    def test_decomposition(self):
        assert check_decomposition((2, 1, 1), window(-3, 4), Fraction(1, 3), 1).holds

    def test_decomposition_point(self):
        assert check_decomposition_point((1, 2), window(-3, 4), Fraction(2, 5), 0).holds

    def test_decomposition_needs_inner_point(self):
        with pytest.raises(PreconditionError):
            check_decomposition((1,), window(0, 4), 0, 4)

    def test_reflection(self):
        assert check_reflection((3, 1), window(-2, 5), Fraction(1, 4)).holds

    def test_colored_reflection(self):
        colors = ColorVector(level=4, exponents=(1, 3))
        assert check_reflection((1, 2), window(0, 4), Fraction(1, 2), colors).holds

    def test_antipode(self):
        assert check_antipode((1, 2, 1), window(0, 5), Fraction(1, 3)).holds

    def test_antipode_empty_index(self):
        with pytest.raises(PreconditionError):
            check_antipode((), window(0, 3), 0)

    def test_truncation(self):
        assert check_truncation((1, 2), 2, 5).holds

    def test_truncation_order(self):
        with pytest.raises(PreconditionError):
            check_truncation((1,), 3, 3)


class TestExpansion:
    def test_coefficients(self):
        assert expansion_coeffs((2,), window(0, 3), 1) == [Fraction(5, 4), Fraction(-9, 4)]

    @pytest.mark.parametrize("iv", [window(-2, 4), window(-3, 0, closed=True)])
    def test_coefficients_need_one_sided_window(self, iv):
        with pytest.raises(PreconditionError):
            expansion_coeffs((3,), iv, 1)

    def test_coefficients_on_negative_side(self):
        assert expansion_coeffs((2,), window(-3, 0), 0) == [Fraction(5, 4)]

    def test_series_matches_direct_sum(self):
        assert check_expansion((2,), window(0, 3), order=10).holds

    def test_window_containing_origin(self):
        with pytest.raises(PreconditionError):
            check_expansion((1,), window(-1, 2))

    def test_pole_detection(self):
        assert is_pole(window(0, 3), -1)
        assert not is_pole(window(0, 3), 0)

    def test_laurent_at_pole(self):
        series = expansion_at((2,), window(0, 3), -1, 4)
        assert series.principal_order == 2
        assert series.coefficient(-2) == 1
        assert series.coefficient(-1) == 0
        assert series.coefficient(0) == 1

    def test_taylor_center(self):
        series = expansion_at((2,), window(0, 3), 0, 2)
        assert series.is_taylor
        assert series.coefficient(0) == Fraction(5, 4)


class TestCyclotomicNumber:
    def test_fourth_root_squared(self):
        assert CyclotomicNumber.monomial(4, 2) == -1

    def test_cube_roots_sum_to_zero(self):
        total = CyclotomicNumber.monomial(3, 1) + CyclotomicNumber.monomial(3, 2) + 1
        assert total.is_zero()

    def test_collapse_at_level_two(self):
        assert CyclotomicNumber.monomial(2, 1, Fraction(3)).collapse() == -3


class TestResidues:
    def test_inverse_power(self):
        assert inverse_power_expand(2, 1, 2) == [1, -2, 3]
        assert inverse_power_expand(1, -2, 1) == [Fraction(-1, 2), Fraction(-1, 4)]

    def test_inverse_power_at_origin(self):
        with pytest.raises(ValueError):
            inverse_power_expand(2, 0, 3)

    def test_simple_pole(self):
        # residue of pi cot(pi s) / s^2 at s = n is 1/n^2
        for n, expected in ((1, Fraction(1)), (2, Fraction(1, 4)), (-3, Fraction(1, 9))):
            constant, rest = residue_at("cot", 2, (), window(0, 2), n).folded()
            assert constant == expected
            assert not any(rest.values())

    def test_taylor_and_laurent_split(self):
        assert taylor_at((2,), window(0, 3), 0, 1) == [Fraction(5, 4), Fraction(-9, 4)]
        with pytest.raises(ValueError):
            laurent_at((2,), window(0, 3), 0, 1)
        with pytest.raises(ValueError):
            taylor_at((2,), window(0, 3), -2, 1)
