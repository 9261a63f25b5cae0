"""Sweeps over the parity theorems, their finite and cyclotomic forms, the bound lemmas and depth reduction."""

from __future__ import annotations

import logging
from typing import Any

from mpmath import mpf

from core.config import settings
from core.errors import NoCertificateError
from core.indices import ColorVector, MultiIndex
from core.models import ResidualReport
from core.parity import bounds
from core.parity.certificate import depth_reduction_certificate
from core.parity.corollary import corollary_M_residual
from core.parity.finite import finite_parity_residual, mixed_window_parity_residual
from core.parity.regularized import (
    CYCLOTOMIC_TOLERANCE,
    cyclotomic_parity_residual,
    parity_blocks,
    shuffle_parity_residual,
    stuffle_parity_residual,
)
from core.parity.reports import build_report
from core.parsing import parse_colors, parse_index, parse_interval
from core.suites.grids import indices, option, rng, sample, windows
from core.suites.interfaces import ICheckSuite

logger = logging.getLogger(__name__)

KINDS = ("stuffle", "shuffle")
EXAMPLE_TOLERANCE = 1e-10
GAP_GROWTH = 1.1


def _restrict(options: dict[str, Any], name: str, values):
    """Narrow a default grid to the single value given in options, if any."""
    chosen = options.get(name)
    if chosen is None:
        return list(values)
    return [chosen]


class ParitySuite(ICheckSuite):
    """Stuffle and shuffle parity residuals, coefficientwise in T."""

    name = "parity"
    description = "regularized parity theorems for weight <= 5, depth <= 3, q in {2, 3, 4}"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        if options.get("index") is not None:
            targets = [str(parse_index(options["index"]))]
        else:
            max_weight = min(option(options, "max_weight"), 5)
            targets = [str(k) for k in indices(max_weight, min(option(options, "max_depth"), 3), min_depth=1)]
        return [
            {"kind": kind, "k": k, "q": q}
            for kind in _restrict(options, "kind", KINDS)
            for k in targets
            for q in _restrict(options, "q", (2, 3, 4))
        ]

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        q = params["q"]
        if params["kind"] == "stuffle":
            report = stuffle_parity_residual(k, q)
        else:
            report = shuffle_parity_residual(k, q)
        if tuple(k) == (2,) and q in (2, 3) and report.residual_magnitude > EXAMPLE_TOLERANCE:
            report.passed = False
            report.detail = f"depth-one example exceeds {EXAMPLE_TOLERANCE}"
        return report


class FiniteSuite(ICheckSuite):
    """Finite-window parity theorems with the certified tail allowance."""

    name = "finite"
    description = "finite and mixed-window parity residuals on seeded instances"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        generator = rng(options, self.name)
        count = options.get("instances", 50)
        trunc = option(options, "trunc_n")
        candidates = [
            {"k": str(k), "q": q, "window": str(iv), "trunc": trunc}
            for k in indices(min(option(options, "max_weight"), 4), min(option(options, "max_depth"), 2), min_depth=1)
            for iv in windows(4)
            for q in (2, 3)
        ]
        return sample(generator, candidates, count)

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        iv = parse_interval(params["window"])
        if iv.m1 < 0 < iv.m2:
            return mixed_window_parity_residual(k, params["q"], iv, params["trunc"])
        return finite_parity_residual(k, params["q"], iv, params["trunc"])


class CyclotomicSuite(ICheckSuite):
    """Parity at level 2 over every color vector, the level-4 spot check and the trivial-color reduction."""

    name = "cyclotomic"
    description = "cyclotomic parity residuals at N = 2 (weight <= 4, depth <= 2) and N = 4"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        level = options.get("level", 2)
        instances: list[dict[str, Any]] = []
        for kind in _restrict(options, "kind", KINDS):
            for k in indices(min(option(options, "max_weight"), 4), min(option(options, "max_depth"), 2), min_depth=1):
                for code in range(level ** len(k)):
                    exponents = tuple((code // level**i) % level for i in range(len(k)))
                    colors = ColorVector(level=level, exponents=exponents)
                    for q in _restrict(options, "q", (1, 2, 3)):
                        if q == 1 and colors.product_exponent() == 0:
                            continue
                        instances.append({"kind": kind, "k": str(k), "colors": str(colors), "q": q})
            instances.append({"kind": kind, "k": "2", "colors": "1@4", "q": 2})
            for k in ("2", "1,2", "2,1"):
                instances.append({"kind": kind, "k": k, "q": 2, "check": "trivial"})
        return instances

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        if params.get("check") == "trivial":
            return self._trivial(params, k)
        colors = parse_colors(params["colors"], len(k))
        return cyclotomic_parity_residual(k, colors, params["q"], params["kind"])

    def _trivial(self, params: dict[str, Any], k: MultiIndex) -> ResidualReport:
        """Level-2 blocks with trivial colors must reproduce the level-1 blocks."""
        kind, q = params["kind"], params["q"]
        colored = parity_blocks(kind, k, q, ColorVector.trivial(len(k), 2))
        plain = parity_blocks(kind, k, q)
        differences = {name: colored[name] - plain[name] for name in plain}
        worst = max(differences, key=lambda name: differences[name].max_magnitude())
        blocks = {f"{name}_difference": value for name, value in differences.items()}
        return build_report("cyclotomic-trivial", params, blocks, differences[worst], CYCLOTOMIC_TOLERANCE)


class BoundsSuite(ICheckSuite):
    """The growth and tail lemmas, one instance per lemma and parameter set."""

    name = "bounds"
    description = "star-log, tail, positive-side, far-window and negative-side bounds"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        n_max = options.get("n_max", 10_000)
        m_list = ",".join(map(str, options.get("m_list", (2**8, 2**10, 2**12))))
        last_m = int(m_list.split(",")[-1])
        lemmas = _restrict(options, "lemma", bounds.LEMMAS)
        instances: list[dict[str, Any]] = []
        for lemma in lemmas:
            if lemma == "star-log":
                instances += [{"lemma": lemma, "r": r, "n_max": n_max} for r in (1, 2, 3)]
            elif lemma == "tail":
                sizes = [n for n in (10**2, 10**3, 10**4) if n <= n_max] or [n_max]
                instances += [{"lemma": lemma, "k": k, "N": n} for k in ("2", "1,2", "1,1,2") for n in sizes]
            elif lemma == "positive":
                instances += [{"lemma": lemma, "k": k, "s": s, "q": 2, "M": m_list}
                              for k in ("", "1", "2,1") for s in (1, 2)]
            elif lemma == "far-window":
                instances += [{"lemma": lemma, "k": k, "q": 2, "M": last_m} for k in ("2", "1,2", "2,1,2")]
            elif lemma == "negative":
                instances += [{"lemma": lemma, "k": k, "s": s, "q": 2, "M": m_list}
                              for k in ("1", "2,1") for s in (1, 2)]
            else:
                instances.append({"lemma": lemma})
        return instances

    def run(self, params: dict[str, Any]) -> ResidualReport:
        lemma = params["lemma"]
        if lemma == "star-log":
            return bounds.star_log_bound(params["r"], params["n_max"])
        if lemma == "tail":
            return bounds.tail_bound(parse_index(params["k"]), params["N"])
        if lemma == "far-window":
            return bounds.far_window_bound(parse_index(params["k"]), params["q"], params["M"])
        m_list = [int(part) for part in params["M"].split(",")]
        if lemma == "positive":
            return bounds.positive_side_bound(parse_index(params["k"]), params["s"], params["q"], m_list)
        if lemma == "negative":
            return bounds.negative_side_bound(parse_index(params["k"]), params["s"], params["q"], m_list)
        return bounds.bound_suite(lemmas=[lemma])[0]


class CorollarySuite(ICheckSuite):
    """The window (0, M) identity along increasing M, with the limit-gap decay."""

    name = "corollaryM"
    description = "truncated (0, M) residuals within allowance and non-increasing limit gaps"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        sizes = ",".join(map(str, options.get("m_list", (2**10, 2**11, 2**12))))
        targets = [options["index"]] if options.get("index") is not None else ["2", "2,1", "1"]
        return [
            {"k": str(parse_index(k)), "q": q, "M": sizes}
            for k in targets
            for q in _restrict(options, "q", (2,))
        ]

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        q = params["q"]
        sizes = [int(part) for part in params["M"].split(",")]
        reports = [corollary_M_residual(k, q, m) for m in sizes]
        gaps = [report.limit_gap for report in reports]
        decaying = all(later <= GAP_GROWTH * earlier for earlier, later in zip(gaps, gaps[1:]))
        within = all(report.passed for report in reports)
        blocks: dict[str, Any] = {}
        for m, report in zip(sizes, reports):
            blocks[f"residual@M={m}"] = mpf(report.residual_magnitude)
            blocks[f"allowance@M={m}"] = mpf(report.allowance)
            blocks[f"gap@M={m}"] = mpf(report.limit_gap)
        last = reports[-1]
        detail = None
        if not within:
            detail = "residual exceeds allowance at M=" + ",".join(
                str(m) for m, report in zip(sizes, reports) if not report.passed
            )
        elif not decaying:
            detail = "limit gap grows along M"
        return build_report(
            "corollary-M-decay",
            params,
            blocks,
            mpf(last.residual_magnitude),
            last.allowance,
            limit_gap=last.limit_gap,
            detail=detail,
            passed=within and decaying,
        )


class DepthCertificateSuite(ICheckSuite):
    """Certificates where weight and depth differ in parity; NoCertificateError where they agree."""

    name = "depthcert"
    description = "depth-reduction certificates for admissible indices of weight <= 5"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        if options.get("index") is not None:
            targets = [parse_index(options["index"])]
        else:
            targets = indices(min(option(options, "max_weight"), 5), 5, admissible=True, min_depth=1)
        q = options.get("q", settings.certificate_q)
        return [{"k": str(k)} for k in targets if q is None or k[-1] == q]

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        expect_certificate = (k.weight - len(k)) % 2 == 1
        try:
            _, report = depth_reduction_certificate(k, k[-1])
        except NoCertificateError as exc:
            detail = f"no certificate: {exc}"
            return build_report("depth-certificate", {**params, "q": k[-1]}, {}, mpf(0), 0,
                                detail=detail, passed=not expect_certificate)
        if not expect_certificate:
            report.passed = False
            report.detail = "certificate produced for equal weight and depth parity"
        return report