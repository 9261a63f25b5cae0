import pytest

from core.errors import AdmissibilityError, NoCertificateError, ParameterError, UnsupportedWindowError
from core.indices import ColorVector
from core.models import IntervalSpec
from core.parity.bounds import bound_suite, far_window_bound, positive_side_bound, star_log_bound, tail_bound
from core.parity.certificate import depth_reduction_certificate
from core.parity.corollary import corollary_M_residual, decay_ratios
from core.parity.finite import finite_parity_residual, mixed_window_parity_residual
from core.parity.regularized import (
    RESIDUAL_TOLERANCE,
    cyclotomic_parity_residual,
    parity_blocks,
    shuffle_parity_residual,
    stuffle_parity_residual,
)


def window(m1, m2):
    return IntervalSpec(m1=m1, m2=m2)


class TestRegularizedParity:
    @pytest.mark.parametrize("k,q", [((2,), 2), ((2, 1), 3), ((1, 1), 2)])
    def test_stuffle(self, k, q):
        report = stuffle_parity_residual(k, q)
        assert report.passed
        assert report.residual_magnitude <= RESIDUAL_TOLERANCE
        assert report.theorem == "parity-stuffle"

    @pytest.mark.parametrize("k,q", [((2,), 2), ((1, 1), 3), ((2, 1), 2)])
    def test_shuffle(self, k, q):
        report = shuffle_parity_residual(k, q)
        assert report.passed
        assert report.residual_magnitude <= RESIDUAL_TOLERANCE

    def test_depth_one_example_is_tight(self):
        assert stuffle_parity_residual((2,), 2).residual_magnitude <= 1e-10

    def test_q_must_exceed_one(self):
        with pytest.raises(ParameterError):
            stuffle_parity_residual((2,), 1)
        with pytest.raises(ParameterError):
            shuffle_parity_residual((2,), 0)

    def test_report_has_pointwise_blocks(self):
        report = stuffle_parity_residual((1, 1), 2)
        assert "residual@T=1" in report.blocks
        assert report.key.startswith("parity-stuffle[")


class TestCyclotomicParity:
    def test_alternating_q1(self):
        report = cyclotomic_parity_residual((1,), ColorVector(level=2, exponents=(1,)), 1)
        assert report.passed

    def test_level_four(self):
        report = cyclotomic_parity_residual((2,), ColorVector(level=4, exponents=(1,)), 2)
        assert report.passed
        assert report.residual_magnitude <= 1e-8

    def test_shuffle_kind(self):
        report = cyclotomic_parity_residual((1, 2), ColorVector(level=2, exponents=(1, 1)), 2, kind="shuffle")
        assert report.passed

    def test_trivial_product_with_q1(self):
        with pytest.raises(ParameterError):
            cyclotomic_parity_residual((1, 1), ColorVector(level=2, exponents=(1, 1)), 1)

    def test_trivial_colors_reduce_to_level_one(self):
        colored = parity_blocks("stuffle", (2,), 2, ColorVector.trivial(1, 2))
        plain = parity_blocks("stuffle", (2,), 2)
        for name, block in plain.items():
            assert (colored[name] - block).max_magnitude() < 1e-20


class TestFiniteParity:
    def test_one_sided(self):
        report = finite_parity_residual((2,), 2, window(0, 3), trunc=10**4)
        assert report.passed
        assert report.residual_magnitude <= report.allowance

    def test_one_sided_depth_two(self):
        assert finite_parity_residual((1, 2), 3, window(0, 5), trunc=10**4).passed

    def test_empty_index(self):
        assert finite_parity_residual((), 2, window(0, 2), trunc=10**4).passed

    def test_negative_window(self):
        assert finite_parity_residual((1, 1), 2, window(-4, -1), trunc=2000).passed

    @pytest.mark.parametrize("k,q,m1,m2", [((2,), 2, -2, 3), ((1, 1), 4, -1, 2), ((3,), 2, -1, 1)])
    def test_mixed(self, k, q, m1, m2):
        report = mixed_window_parity_residual(k, q, window(m1, m2), trunc=10**4)
        assert report.passed
        assert report.theorem == "mixed-window-parity"

    def test_straddling_window_needs_mixed_form(self):
        with pytest.raises(ParameterError):
            finite_parity_residual((2,), 2, window(-1, 2), trunc=1000)

    def test_one_sided_window_rejected_by_mixed_form(self):
        with pytest.raises(ParameterError):
            mixed_window_parity_residual((2,), 2, window(0, 3), trunc=1000)

    def test_closed_window(self):
        with pytest.raises(UnsupportedWindowError):
            finite_parity_residual((2,), 2, IntervalSpec(m1=0, m2=3, right_closed=True), trunc=1000)

    def test_truncation_must_clear_window(self):
        with pytest.raises(ParameterError):
            finite_parity_residual((2,), 2, window(0, 3), trunc=4)


class TestCorollary:
    def test_depth_one(self):
        report = corollary_M_residual((2,), 2, 2**10)
        assert report.passed
        assert report.limit_gap is not None

    def test_regularized_path(self):
        assert corollary_M_residual((1,), 3, 2**10).passed

    def test_parameters(self):
        with pytest.raises(ParameterError):
            corollary_M_residual((2,), 1, 2**10)
        with pytest.raises(ParameterError):
            corollary_M_residual((2,), 2, 64, cutoff=100)

    @pytest.mark.slow
    def test_gap_decays(self):
        reports = [corollary_M_residual((2, 1), 2, m) for m in (2**12, 2**13)]
        assert all(report.passed for report in reports)
        assert decay_ratios(reports)[0] < 0.9


class TestDepthCertificate:
    @pytest.mark.parametrize("k", [(1, 2), (2,), (1, 1, 2), (3, 2)])
    def test_certificate(self, k):
        certificate, report = depth_reduction_certificate(k)
        assert report.passed
        assert certificate.is_lower_depth
        assert certificate.q == k[-1]

    def test_equal_parity(self):
        with pytest.raises(NoCertificateError):
            depth_reduction_certificate((2, 2))

    def test_q_is_last_part(self):
        with pytest.raises(ParameterError):
            depth_reduction_certificate((1, 2), 3)

    def test_divergent_target(self):
        with pytest.raises(AdmissibilityError):
            depth_reduction_certificate((2, 1))

    def test_render(self):
        certificate, _ = depth_reduction_certificate((1, 2))
        assert certificate.render().startswith("ζ(1,2) = ")


class TestBounds:
    def test_star_log(self):
        report = star_log_bound(3, 10**4)
        assert report.passed
        assert report.theorem == "bound-star-log"

    def test_tail(self):
        assert tail_bound((1, 2), 10**3).passed

    def test_far_window(self):
        assert far_window_bound((1, 2), 2, 2**10).passed

    def test_positive_side(self):
        assert positive_side_bound((1,), 1, 2, [2**8, 2**10]).passed

    def test_calibration_needs_two_sizes(self):
        with pytest.raises(ParameterError):
            positive_side_bound((1,), 1, 2, [2**8])

    def test_tail_needs_admissible_index(self):
        with pytest.raises(AdmissibilityError):
            tail_bound((2, 1), 100)

    def test_unknown_lemma(self):
        with pytest.raises(ParameterError):
            bound_suite(lemmas=["bogus"])
