from fractions import Fraction

import pytest
from pydantic import ValidationError

from core.errors import ParameterError, ParseError, RangeError
from core.indices import (
    ColorVector,
    MultiIndex,
    SliceRange,
    check_colors,
    colored_admissible,
    repeated,
    reverse,
    slice_index,
    weight_depth,
)
from core.models import IntervalSpec, ResidualReport
from core.parsing import parse_colors, parse_index, parse_interval, parse_shift, parse_word


class TestParseIndex:
    def test_parts(self):
        assert parse_index("2,1,3") == (2, 1, 3)

    def test_empty(self):
        assert parse_index("") == ()

    def test_rejects_zero_part(self):
        with pytest.raises(ParseError):
            parse_index("2,0")

    def test_rejects_garbage(self):
        with pytest.raises(ParseError) as info:
            parse_index("2,x")
        assert info.value.position is not None


class TestParseInterval:
    def test_open(self):
        iv = parse_interval("(0,4)")
        assert (iv.m1, iv.m2, iv.right_closed) == (0, 4, False)
        assert list(iv.lattice_points()) == [1, 2, 3]

    def test_right_closed(self):
        iv = parse_interval("(0,2]")
        assert iv.right_closed
        assert list(iv.lattice_points()) == [1, 2]

    def test_infinite_left(self):
        iv = parse_interval("(-inf,0)")
        assert iv.m1 is None and not iv.is_finite

    def test_reversed_ends(self):
        with pytest.raises(ParseError):
            parse_interval("(3,1)")

    def test_closed_infinite_end(self):
        with pytest.raises(ParseError):
            parse_interval("(0,inf]")


class TestParseColorsAndShift:
    def test_colors_reduced(self):
        colors = parse_colors("1,7@4")
        assert colors.level == 4
        assert colors.exponents == (1, 3)

    def test_colors_need_level(self):
        with pytest.raises(ParseError):
            parse_colors("1,2")

    def test_colors_depth_mismatch(self):
        with pytest.raises(ParseError):
            parse_colors("1@2", depth=2)

    def test_shift(self):
        assert parse_shift("1/2") == Fraction(1, 2)
        assert parse_shift("-3") == -3

    def test_bad_shift(self):
        with pytest.raises(ParseError):
            parse_shift("half")


class TestParseWord:
    def test_stuffle(self):
        assert parse_word("y:2,1") == ("stuffle", 1, ((2, 0), (1, 0)))

    def test_colored_stuffle(self):
        assert parse_word("y:2@1,1@3@N=4") == ("stuffle", 4, ((2, 1), (1, 3)))

    def test_shuffle(self):
        assert parse_word("x:1,0,1") == ("shuffle", 1, (1, 0, 1))

    def test_letter_outside_level(self):
        with pytest.raises(ParseError):
            parse_word("x:2,0")

    def test_unknown_alphabet(self):
        with pytest.raises(ParseError):
            parse_word("z:1")


class TestMultiIndex:
    def test_weight_depth(self):
        k = MultiIndex((2, 1, 3))
        assert k.weight == 6
        assert k.depth == 3

    def test_admissible(self):
        assert MultiIndex((1, 2)).is_admissible
        assert not MultiIndex((2, 1)).is_admissible
        assert MultiIndex(()).is_admissible

    def test_reverse_and_concat(self):
        k = MultiIndex((1, 2))
        assert k.reverse() == (2, 1)
        assert isinstance(k + (3,), MultiIndex)
        assert k + (3,) == (1, 2, 3)

    def test_repeated(self):
        assert repeated(1, 3) == (1, 1, 1)


class TestColorVector:
    def test_product_exponent(self):
        colors = ColorVector(level=4, exponents=(1, 2, 3))
        assert colors.product_exponent() == 2

    def test_inverse_and_reverse(self):
        colors = ColorVector(level=4, exponents=(1, 2))
        assert colors.inverse().exponents == (3, 2)
        assert colors.reverse().exponents == (2, 1)

    def test_trivial(self):
        assert ColorVector.trivial(2, 3).is_trivial

    def test_depth_mismatch(self):
        with pytest.raises(ParameterError):
            check_colors((1, 2), ColorVector(level=2, exponents=(1,)))

    def test_colored_admissible(self):
        assert not colored_admissible((1,), ColorVector(level=2, exponents=(0,)))
        assert colored_admissible((1,), ColorVector(level=2, exponents=(1,)))


class TestModels:
    def test_interval_order(self):
        with pytest.raises(ValidationError):
            IntervalSpec(m1=3, m2=3)

    def test_interval_shift(self):
        assert str(IntervalSpec(m1=0, m2=3).shifted(-2)) == "(-2,1)"

    def test_report_accepts_either_pass_key(self):
        a = ResidualReport.model_validate({"key": "x", "theorem": "t", "pass": True})
        b = ResidualReport.model_validate({"key": "x", "theorem": "t", "passed": True})
        assert a.passed and b.passed
        assert '"pass":true' in a.model_dump_json(by_alias=True).replace(" ", "")


class TestSlicing:
    def test_closed_closed(self):
        assert slice_index(MultiIndex((5, 7, 9)), SliceRange(lo=1, hi=2)) == (5, 7)

    def test_empty_open_range(self):
        assert slice_index(MultiIndex((5, 7, 9)), SliceRange(lo=0, hi=1, ends="open-open")) == ()

    def test_open_closed(self):
        assert MultiIndex((2, 1, 3)).slice(1, 3, "open-closed") == (1, 3)

    def test_colors_follow_index(self):
        colors = ColorVector(level=3, exponents=(0, 1, 2))
        assert colors.slice(2, 3).exponents == (1, 2)

    def test_malformed(self):
        with pytest.raises(RangeError):
            MultiIndex((1, 2)).slice(3, 1)

    def test_reverse_involution(self):
        assert reverse(reverse((4, 1))) == (4, 1)
        assert reverse(()) == ()

    def test_weight_depth(self):
        assert weight_depth((2, 1, 3)) == (6, 3)
        assert weight_depth(()) == (0, 0)
