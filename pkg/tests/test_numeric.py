from fractions import Fraction

import pytest
from mpmath import mp, mpf

from core.config import settings
from core.errors import AdmissibilityError, DivergenceError, PrecisionError
from core.indices import ColorVector
from core.numeric import mzv
from core.numeric.bounded import Bounded, RegPoly, fraction_to_mpf
from core.numeric.mzv import alt_zeta, colored_li, colored_li_star, set_working_precision, zeta, zeta_star
from core.numeric.regularize import reg_shuffle, reg_stuffle, regularize
from core.numeric.tables import harmonic, running_sums, truncated_zeta_mp
from core.series.kernels import kernel_expand

TIGHT = mpf("1e-30")


def close(value: Bounded, target) -> bool:
    if isinstance(target, (int, Fraction)):
        target = fraction_to_mpf(Fraction(target))
    return abs(value.mid - target) <= value.rad + TIGHT


class TestBounded:
    def test_exact_arithmetic(self):
        third = Bounded.from_fraction(Fraction(1, 3))
        total = third * 3 - 1
        assert total.is_exact and total.exact == 0

    def test_radius_grows(self):
        a = Bounded(mpf(1), mpf("1e-20"))
        assert (a * a).rad >= mpf("2e-20")

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            Bounded(1, -1)

    def test_render_exact(self):
        assert Bounded.from_fraction(Fraction(-5, 12)).render() == "-5/12"


class TestRegPoly:
    def test_trailing_zeros_dropped(self):
        assert RegPoly([1, 2, 0, 0]).degree == 1

    def test_evaluate(self):
        poly = RegPoly([-1, 0, 1])
        assert poly.evaluate(3).exact == 8

    def test_render(self):
        assert RegPoly([-1, 0, 1]).render() == "T^2 - 1"
        assert RegPoly([0, Fraction(1, 2)]).render() == "(1/2)·T"

    def test_product(self):
        square = RegPoly([1, 1]) * RegPoly([1, 1])
        assert [c.exact for c in square.coeffs] == [1, 2, 1]


class TestConvergentValues:
    def test_zeta2(self):
        assert close(zeta((2,)), mp.pi**2 / 6)

    def test_duality(self):
        assert close(zeta((1, 2)), zeta((3,)).mid)

    def test_star(self):
        # zeta*(1,2) = zeta(1,2) + zeta(3) = 2 zeta(3)
        assert close(zeta_star((1, 2)), 2 * zeta((3,)).mid)

    def test_alternating(self):
        assert alt_zeta(0).exact == Fraction(1, 2)
        assert close(alt_zeta(1), mp.log(2))
        assert close(alt_zeta(2), mp.pi**2 / 12)

    def test_colored_log(self):
        value = colored_li((1,), ColorVector(level=2, exponents=(1,)))
        assert close(value, -mp.log(2))

    def test_colored_star_depth_one(self):
        colors = ColorVector(level=2, exponents=(1,))
        assert close(colored_li_star((2,), colors), colored_li((2,), colors).mid)

    def test_level_four_is_complex(self):
        value = colored_li((1,), ColorVector(level=4, exponents=(1,)))
        # -log(1 - i) = -log(sqrt 2) + i pi/4
        assert abs(value.mid - mp.mpc(-mp.log(2) / 2, mp.pi / 4)) <= value.rad + TIGHT

    def test_divergent_index(self):
        with pytest.raises(AdmissibilityError):
            zeta((2, 1))

    def test_divergent_colored_index(self):
        with pytest.raises(DivergenceError):
            colored_li((1,), ColorVector(level=2, exponents=(0,)))

    def test_eps_floor(self):
        with pytest.raises(PrecisionError):
            zeta((2,), eps=1e-20)

    def test_cache_follows_settings(self, monkeypatch):
        monkeypatch.setattr(settings, "cache_size", 3)
        for k in ((2,), (3,), (4,), (5,)):
            zeta(k)
        info = mzv._word_cache().cache_info()
        assert (info.maxsize, info.currsize) == (3, 3)

    def test_precision_floor(self):
        with pytest.raises(PrecisionError):
            set_working_precision(10)

    def test_higher_precision_is_consistent(self):
        low = zeta((2, 3))
        set_working_precision(80)
        high = zeta((2, 3))
        assert abs(low.mid - high.mid) <= low.rad + high.rad


class TestRegularization:
    def test_depth_one(self):
        poly = reg_stuffle((1,))
        assert poly.degree == 1
        assert close(poly.coefficient(1), 1)
        assert close(poly.coefficient(0), 0)

    def test_stuffle_11(self):
        poly = reg_stuffle((1, 1))
        assert poly.degree == 2
        assert close(poly.coefficient(2), Fraction(1, 2))
        assert close(poly.coefficient(1), 0)
        assert close(poly.coefficient(0), -mp.pi**2 / 12)

    def test_shuffle_11(self):
        poly = reg_shuffle((1, 1))
        assert poly.degree == 2
        assert close(poly.coefficient(2), Fraction(1, 2))
        assert close(poly.coefficient(0), 0)

    @pytest.mark.parametrize("kind", ["stuffle", "shuffle"])
    def test_21(self, kind):
        # stuffle: zeta(2) T - zeta(1,2) - zeta(3); shuffle: zeta(2) T - 2 zeta(1,2)
        poly = regularize(kind, (2, 1))
        assert close(poly.coefficient(1), mp.pi**2 / 6)
        assert close(poly.coefficient(0), -2 * zeta((3,)).mid)

    def test_admissible_is_constant(self):
        poly = reg_shuffle((1, 2))
        assert poly.degree == 0
        assert close(poly.coefficient(0), zeta((3,)).mid)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            regularize("concat", (1,))


class TestTables:
    def test_running_sums(self):
        values = running_sums((1, 2), 3)
        assert abs(values[3] - mpf(5) / 12) < TIGHT

    def test_truncated_matches_exact(self):
        assert close(truncated_zeta_mp((1, 2), 4), mpf(5) / 12)

    def test_harmonic(self):
        assert close(harmonic(4), mpf(25) / 12)
        assert harmonic(0).exact == 0


class TestKernels:
    def test_cot_residue(self):
        assert kernel_expand("cot", 0).leading_coefficient() == 1

    def test_csc_residue_sign(self):
        assert kernel_expand("csc", 3).leading_coefficient() == -1
        assert kernel_expand("csc", -2).leading_coefficient() == 1

    @pytest.mark.parametrize("kind", ["cot", "csc"])
    @pytest.mark.parametrize("center", [-3, 0, 2])
    def test_matches_closed_form(self, kind, center):
        expansion = kernel_expand(kind, center, 40)
        s = center + mpf(1) / 10
        value = expansion.evaluate(s)
        assert abs(value.mid - expansion.closed_form(s)) <= value.rad + expansion.truncation_bound(s) + TIGHT

    def test_unknown_kernel(self):
        with pytest.raises(ValueError):
            kernel_expand("tan", 0)
