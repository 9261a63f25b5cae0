"""Word algebra, numeric engine and regularization-limit sweeps."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from mpmath import mp, mpf

from core.config import settings
from core.indices import ColorVector, MultiIndex
from core.models import ResidualReport
from core.numeric.bounded import Bounded
from core.numeric.mzv import alt_zeta, zeta, zeta_star
from core.numeric.regularize import reg_shuffle, reg_stuffle, word_poly_value
from core.numeric.tables import harmonic, truncated_zeta_mp
from core.parity.reports import build_report, exact_report
from core.parsing import parse_colors, parse_index
from core.suites.grids import compositions, indices, option, rng
from core.suites.interfaces import ICheckSuite
from core.words.algebra import WordPoly, product
from core.words.decompose import decompose, reconstruct

logger = logging.getLogger(__name__)

KINDS = ("stuffle", "shuffle")
PRODUCT_WEIGHT = 7
RECONSTRUCTION_WEIGHT = 6
REG_CONSTANT_TOLERANCE = 1e-12
LIMIT_RATIO = 0.75


def _random_index(generator, weight: int) -> MultiIndex:
    """Uniform random composition of the given weight."""
    parts, current = [], 1
    for _ in range(weight - 1):
        if generator.random() < 0.5:
            parts.append(current)
            current = 1
        else:
            current += 1
    parts.append(current)
    return MultiIndex(parts)


def _word(kind: str, params: dict[str, Any], name: str) -> WordPoly:
    k = parse_index(params[name])
    colors = params.get(f"{name}_colors")
    return WordPoly.from_index(kind, k, None if colors is None else parse_colors(colors, len(k)))


class WordsSuite(ICheckSuite):
    """Product laws on seeded word triples, decompose/reconstruct, and the (1,1) regularizations."""

    name = "words"
    description = "stuffle/shuffle commutativity, associativity, unit; exact decomposition round trip"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        generator = rng(options, self.name)
        count = options.get("instances", 500)
        instances: list[dict[str, Any]] = []
        for i in range(count):
            kind = KINDS[i % 2]
            level = 2 if generator.random() < 0.25 else 1
            weights = [generator.randint(1, 3) for _ in range(3)]
            while sum(weights) > PRODUCT_WEIGHT:
                weights[weights.index(max(weights))] -= 1
            params: dict[str, Any] = {"check": "laws", "kind": kind, "n": i}
            for name, weight in zip("uvw", weights):
                k = _random_index(generator, weight)
                params[name] = str(k)
                if level > 1:
                    exponents = tuple(generator.randrange(level) for _ in k)
                    params[f"{name}_colors"] = str(ColorVector(level=level, exponents=exponents))
            instances.append(params)
        max_weight = min(option(options, "max_weight"), RECONSTRUCTION_WEIGHT)
        for kind in KINDS:
            for weight in range(1, max_weight + 1):
                for depth in range(1, weight + 1):
                    for parts in compositions(weight, depth):
                        instances.append({"check": "reconstruct", "kind": kind, "k": str(MultiIndex(parts))})
            instances.append({"check": "reg11", "kind": kind})
        return instances

    def run(self, params: dict[str, Any]) -> ResidualReport:
        check = params["check"]
        kind = params["kind"]
        if check == "laws":
            return self._laws(params)
        if check == "reconstruct":
            original = WordPoly.from_index(kind, parse_index(params["k"]))
            rebuilt = reconstruct(decompose(original), kind)
            holds = rebuilt == original
            return exact_report("words-reconstruct", params, Fraction(0), Fraction(0 if holds else 1), holds)
        return self._reg11(params)

    def _laws(self, params: dict[str, Any]) -> ResidualReport:
        kind = params["kind"]
        u, v, w = (_word(kind, params, name) for name in "uvw")
        unit = WordPoly.unit(kind, u.level)
        failures = []
        if product(u, v) != product(v, u):
            failures.append("commutativity")
        if product(product(u, v), w) != product(u, product(v, w)):
            failures.append("associativity")
        if product(u, unit) != u or product(unit, u) != u:
            failures.append("unit")
        report = exact_report(
            f"words-{kind}", params, Fraction(len(failures)), Fraction(0), not failures
        )
        if failures:
            report.detail = "failed: " + ", ".join(failures)
        return report

    def _reg11(self, params: dict[str, Any]) -> ResidualReport:
        kind = params["kind"]
        poly = reg_stuffle((1, 1)) if kind == "stuffle" else reg_shuffle((1, 1))
        zeta2 = zeta((2,))
        if kind == "stuffle":
            expected = [zeta2 * Fraction(-1, 2), Bounded.zero(), Bounded.from_fraction(Fraction(1, 2))]
        else:
            expected = [Bounded.zero(), Bounded.zero(), Bounded.from_fraction(Fraction(1, 2))]
        differences = [poly.coefficient(i) - expected[i] for i in range(3)]
        worst = max(abs(d.mid) for d in differences)
        blocks = {"reg": poly, "expected_constant": expected[0]}
        return build_report(f"words-reg11-{kind}", params, blocks, worst, REG_CONSTANT_TOLERANCE,
                            passed=bool(worst <= REG_CONSTANT_TOLERANCE) and poly.degree == 2)


class NumericSuite(ICheckSuite):
    """Oracle values and algebraic relations of the series engine."""

    name = "numeric"
    description = "zeta(2), duality zeta(1,2) = zeta(3), star/strict relation, stuffle-compatible products"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        generator = rng(options, self.name)
        instances: list[dict[str, Any]] = [{"check": "zeta2"}, {"check": "duality"}, {"check": "alt2"}]
        for total in range(3, 9):
            for b in range(2, total):
                instances.append({"check": "star", "a": total - b, "b": b})
        admissible = indices(4, 2, admissible=True, min_depth=1)
        for i in range(options.get("pairs", 100)):
            u, v = (admissible[generator.randrange(len(admissible))] for _ in range(2))
            instances.append({"check": "stuffle", "u": str(u), "v": str(v), "n": i})
        return instances

    def run(self, params: dict[str, Any]) -> ResidualReport:
        check = params["check"]
        if check == "zeta2":
            value = zeta((2,))
            oracle = mp.pi**2 / 6
            return build_report("numeric-zeta2", params, {"zeta": value, "pi^2/6": oracle}, value - oracle, 1e-12)
        if check == "duality":
            left, right = zeta((1, 2)), zeta((3,))
            return build_report("numeric-duality", params, {"zeta(1,2)": left, "zeta(3)": right}, left - right, 2e-12)
        if check == "alt2":
            left, right = alt_zeta(2), zeta((2,)) * Fraction(1, 2)
            return build_report("numeric-alt2", params, {"alt_zeta(2)": left, "zeta(2)/2": right}, left - right,
                                2 * settings.default_eps)
        if check == "star":
            a, b = params["a"], params["b"]
            star, strict, merged = zeta_star((a, b)), zeta((a, b)), zeta((a + b,))
            blocks = {"star": star, "strict": strict, "merged": merged}
            return build_report("numeric-star", params, blocks, star - strict - merged, 3e-12)
        u, v = parse_index(params["u"]), parse_index(params["v"])
        left = zeta(u) * zeta(v)
        poly = word_poly_value(product(WordPoly.from_index("stuffle", u), WordPoly.from_index("stuffle", v)))
        right = poly.coefficient(0)
        blocks = {"product": left, "stuffle": right}
        return build_report("numeric-stuffle", params, blocks, left - right, 4 * settings.default_eps)


class RegLimitSuite(ICheckSuite):
    """Truncated sums against the stuffle regularization at T = zeta_(0,M)(1)."""

    name = "reglimit"
    description = "|zeta_(0,M)(k) - reg_stuffle(k)(H_(M-1))| decays by a factor < 0.75 when M doubles"

    def plan(self, options: dict[str, Any]) -> list[dict[str, Any]]:
        sizes = options.get("m_list", (2**14, 2**15))
        targets = options.get("indices", ("1", "2,1", "1,1", "1,2,1"))
        return [{"k": str(parse_index(text)), "M": ",".join(map(str, sizes))} for text in targets]

    def _gap(self, k: MultiIndex, m: int) -> Bounded:
        poly = reg_stuffle(k)
        return truncated_zeta_mp(k, m) - poly.evaluate(harmonic(m - 1))

    def run(self, params: dict[str, Any]) -> ResidualReport:
        k = parse_index(params["k"])
        sizes = [int(part) for part in params["M"].split(",")]
        gaps = [self._gap(k, m) for m in sizes]
        exact = all(abs(g.mid) <= g.rad for g in gaps)
        ratios = [gaps[i + 1].upper() / gaps[i].upper() for i in range(len(gaps) - 1) if gaps[i].upper() > 0]
        passed = exact or all(ratio < LIMIT_RATIO for ratio in ratios)
        blocks: dict[str, Any] = {f"gap@M={m}": g for m, g in zip(sizes, gaps)}
        blocks.update({f"ratio{i + 1}": mpf(r) for i, r in enumerate(ratios)})
        last = gaps[-1]
        return build_report(
            "reglimit",
            params,
            blocks,
            last,
            last.upper(),
            limit_gap=abs(last.mid),
            detail="exact" if exact else "ratios " + ", ".join(mp.nstr(r, 4) for r in ratios),
            passed=passed,
        )
