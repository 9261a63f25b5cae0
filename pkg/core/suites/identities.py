"""Exact identity sweeps: the structural identities, series expansions and kernel expansions."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Optional

from mpmath import mpf

from core.hurwitz.finite import eval_finite
from core.hurwitz.identities import (
    check_antipode,
    check_decomposition,
    check_decomposition_point,
    check_expansion,
    check_reflection,
    check_translation,
    check_truncation,
)
from core.indices import ColorVector
from core.models import ResidualReport
from core.parity.reports import build_report, exact_report
from core.parsing import parse_colors, parse_index, parse_interval, parse_shift
from core.series.expansion import expansion_at, is_pole
from core.series.kernels import KERNELS, kernel_expand
from core.suites.grids import indices, option, rng, sample, sample_shift, windows
from core.suites.interfaces import ICheckSuite

logger = logging.getLogger(__name__)

SHIFTED_IDENTITIES = ("translation", "decomposition", "decomposition-point", "reflection", "antipode")
KERNEL_TOLERANCE = 1e-10


def _colors(params: dict[str, Any], depth: int) -> Optional[ColorVector]:
    text = params.get("colors")
    return None if text is None else parse_colors(text, depth)


def _random_colors(generator, depth: int, level: int) -> str:
    return str(ColorVector(level=level, exponents=tuple(generator.randrange(level) for _ in range(depth))))


def _magnitude(value):
    """|value| for a rational, or the collapsed cyclotomic value."""
    collapse = getattr(value, "collapse", None)
    if collapse is not None:
        value = collapse()
    if isinstance(value, Fraction):
        return abs(value)
    return value.upper()


class PropositionSuite(ICheckSuite):
    """Translation, both decomposition forms, reflection, antipode, truncation and the power series in s."""

    name = "prop23"
    description = "exact structural identities over a window/shift grid, level 1 and colored level 2"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        generator = rng(options, self.name)
        max_weight = option(options, "max_weight")
        max_depth = option(options, "max_depth")
        radius = option(options, "window_radius")
        shifts = options.get("shifts", 5)
        per_index = options.get("windows_per_index", 2)
        order = options.get("order", 10)
        all_windows = windows(radius)
        positive = [iv for iv in all_windows if iv.m1 > 0]
        one_sided = [iv for iv in all_windows if iv.m1 >= 0 or iv.m2 <= 0]
        levels = options.get("levels", (1, 2))

        instances = []
        for level in levels:
            for k in indices(max_weight, max_depth):
                colors = None if level == 1 else _random_colors(generator, len(k), level)
                base = {"k": str(k)} if colors is None else {"k": str(k), "colors": colors}
                for iv in sample(generator, all_windows, per_index):
                    for _ in range(shifts):
                        s = str(sample_shift(generator))
                        for identity in SHIFTED_IDENTITIES:
                            if identity == "antipode" and not k:
                                continue
                            params = {**base, "identity": identity, "iv": str(iv), "s": s}
                            if identity == "translation":
                                params["n"] = generator.randint(-3, 3)
                            elif identity.startswith("decomposition"):
                                if iv.m2 - iv.m1 < 2:
                                    continue
                                params["n"] = generator.randint(iv.m1 + 1, iv.m2 - 1)
                            instances.append(params)
                for iv in sample(generator, positive, 1):
                    instances.append({**base, "identity": "truncation", "m1": iv.m1, "m2": iv.m2,
                                      "s": str(sample_shift(generator))})
                for iv in sample(generator, one_sided, 1):
                    instances.append({**base, "identity": "expansion", "iv": str(iv), "order": order})
        return instances

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        colors = _colors(params, len(k))
        identity = params["identity"]
        theorem = f"prop-{identity}"
        if identity == "truncation":
            result = check_truncation(k, params["m1"], params["m2"], parse_shift(params["s"]), colors)
        elif identity == "expansion":
            result = check_expansion(k, parse_interval(params["iv"]), params["order"], colors)
        else:
            iv = parse_interval(params["iv"])
            s = parse_shift(params["s"])
            if identity == "translation":
                result = check_translation(k, iv, s, params["n"], colors)
            elif identity == "decomposition":
                result = check_decomposition(k, iv, s, params["n"], colors)
            elif identity == "decomposition-point":
                result = check_decomposition_point(k, iv, s, params["n"], colors)
            elif identity == "reflection":
                result = check_reflection(k, iv, s, colors)
            else:
                result = check_antipode(k, iv, s, colors)
        return exact_report(theorem, params, result.lhs, result.rhs, result.holds, result.slack)


class ExpansionSuite(ICheckSuite):
    """Taylor and Laurent series at integer centers against the exact value at center + 1/10."""

    name = "expansion"
    description = "truncated Taylor/Laurent series vs exact evaluation, within twice the omitted terms"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        generator = rng(options, self.name)
        radius = min(option(options, "window_radius"), 6)
        order = options.get("order", 8)
        count = options.get("instances", 200)
        candidates = []
        for k in indices(min(option(options, "max_weight"), 5), min(option(options, "max_depth"), 3), min_depth=1):
            for iv in windows(radius):
                for n in range(-radius, radius + 1):
                    candidates.append({"k": str(k), "iv": str(iv), "n": n, "order": order})
        chosen = sample(generator, candidates, count)
        for params in chosen:
            if generator.random() < 0.25:
                params["colors"] = _random_colors(generator, len(parse_index(params["k"])), 2)
        return chosen

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        iv = parse_interval(params["iv"])
        n = params["n"]
        order = params["order"]
        colors = _colors(params, len(k))
        t = Fraction(1, 10)
        series = expansion_at(k, iv, n, order + 2, colors)
        approx = Fraction(0)
        for power in range(-series.principal_order, order + 1):
            approx = approx + series.coefficient(power) * t**power
        direct = eval_finite(k, iv, n + t, colors=colors)
        omitted = sum((_magnitude(series.coefficient(p)) * t**p for p in (order + 1, order + 2)), Fraction(0))
        residual = approx - direct
        holds = _magnitude(residual) <= 2 * omitted
        kind = "laurent" if k and is_pole(iv, n) else "taylor"
        blocks = {"series": approx, "direct": direct, "omitted": omitted}
        if kind == "laurent":
            blocks["pole_order"] = series.principal_order
        return build_report(f"expansion-{kind}", params, blocks, residual, float(2 * omitted), passed=holds)


class KernelSuite(ICheckSuite):
    """pi cot(pi s) and pi / sin(pi s) around integer centers against mpmath's closed forms."""

    name = "kernel"
    description = "kernel Laurent expansions vs direct evaluation, leading coefficients exact"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        centers = options.get("centers", 5)
        terms = options.get("terms", 40)
        return [
            {"kind": kind, "center": n, "terms": terms}
            for kind in KERNELS
            for n in range(-centers, centers + 1)
        ]

    def run(self, params: dict[str, Any]) -> ResidualReport:
        expansion = kernel_expand(params["kind"], params["center"], params["terms"])
        n = params["center"]
        worst = mpf(0)
        allowance = mpf(KERNEL_TOLERANCE)
        for i in range(10):
            offset = mpf((i + 1) * (-1) ** i) / 25
            s = n + offset
            difference = abs(expansion.evaluate(s).mid - expansion.closed_form(s))
            worst = max(worst, difference)
            allowance = max(allowance, KERNEL_TOLERANCE + expansion.truncation_bound(s))
        expected = 1 if params["kind"] == "cot" or n % 2 == 0 else -1
        leading = expansion.leading_coefficient()
        blocks = {"leading": leading, "expected_leading": expected, "max_difference": worst}
        passed = leading == expected and worst <= allowance
        return build_report(f"kernel-{params['kind']}", params, blocks, worst, allowance, passed=passed)
