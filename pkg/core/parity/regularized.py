"""Regularized parity theorems (stuffle, shuffle, and their cyclotomic versions).

For q > 1 (or q = 1 with a non-trivial color product) the four blocks

    B1 = sum_j (-1)^j Li*(rev k[:j], q; rev mu[:j], P^-1) reg(k[j:]; mu[j:])
    B2 = -2 sum_{2k+m=q} sum_{|nu|=m} prod binom(-k_l, nu_l) reg(k+nu; mu) zeta(2k)
    B3 = sum_j (-1)^(q+|k[:j]|) Li(rev k[:j], q; rev mu[:j]^-1, P) reg(k[j:]; mu[j:])
    B4 = -2 sum_j (-1)^(q+|k[:j-1]|) sum_{2k+m=k_j} sum_{|nu|=m} binom(-q, nu_j)
         prod_{l!=j} binom(-k_l, nu_l) (-1)^|nu[:j]| Li(rev(k+nu)[:j-1], q+nu_j; ..., P)
         reg((k+nu)[j:]; mu[j:]) zeta(2k)

sum to zero as polynomials in T, with P = mu_1...mu_r and zeta(0) = -1/2.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence

from core.config import settings
from core.errors import ParameterError
from core.indices import ColorVector, MultiIndex, check_colors
from core.models import ResidualReport
from core.numeric.bounded import Bounded, RegPoly
from core.numeric.mzv import colored_li, colored_li_star, even_zeta
from core.numeric.regularize import regularize
from core.parity.reports import REGPOLY_PROBES, build_report
from core.series.expansion import binomial_weight, neg_binomial, weak_compositions

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9
CYCLOTOMIC_TOLERANCE = 1e-8
BLOCK_NAMES = ("block1", "block2", "block3", "block4")


def _sign(power: int) -> int:
    return -1 if power % 2 else 1


def _check_parameters(k: MultiIndex, q: int, colors: Optional[ColorVector]) -> None:
    if q < 1:
        raise ParameterError(f"q must be a positive integer, got {q}")
    if q == 1 and (colors is None or colors.product_exponent() == 0):
        raise ParameterError("(q, mu_1...mu_r) = (1, 1) makes the star block divergent")


class ParityAssembler:
    """Evaluates the four blocks with memoized factors."""

    def __init__(self, kind: str, k: MultiIndex, q: int, colors: Optional[ColorVector], eps: Optional[float]):
        self.kind = kind
        self.k = k
        self.q = q
        self.r = len(k)
        self.level = 1 if colors is None else colors.level
        self.exponents = (0,) * self.r if colors is None else colors.exponents
        self.product = sum(self.exponents) % self.level
        self.eps = eps
        self._reg: dict[tuple, RegPoly] = {}
        self._li: dict[tuple, Bounded] = {}

    def colors(self, exponents: Sequence[int]) -> Optional[ColorVector]:
        if self.level == 1:
            return None
        return ColorVector(level=self.level, exponents=tuple(exponents))

    def reg(self, index: Sequence[int], exponents: Sequence[int]) -> RegPoly:
        key = (tuple(index), tuple(exponents))
        if key not in self._reg:
            self._reg[key] = regularize(self.kind, index, self.colors(exponents), self.eps)
        return self._reg[key]

    def li(self, index: Sequence[int], exponents: Sequence[int], star: bool = False) -> Bounded:
        key = (tuple(index), tuple(exponents), star)
        if key not in self._li:
            evaluate = colored_li_star if star else colored_li
            self._li[key] = evaluate(MultiIndex(index), self.colors(exponents), self.eps)
        return self._li[key]

    def blocks(self, reg: Callable[[Sequence[int], Sequence[int]], object], zero) -> dict[str, object]:
        k, q, r = self.k, self.q, self.r
        mu = self.exponents
        block1, block2, block3, block4 = zero, zero, zero, zero

        for j in range(r + 1):
            head = tuple(reversed(k[:j]))
            head_mu = tuple(reversed(mu[:j]))
            tail = reg(k[j:], mu[j:])
            star = self.li(head + (q,), head_mu + (-self.product,), star=True)
            block1 = block1 + tail * star * _sign(j)
            inverted = tuple(-a for a in head_mu)
            plain = self.li(head + (q,), inverted + (self.product,))
            block3 = block3 + tail * plain * _sign(q + sum(k[:j]))

        for two_k in range(0, q + 1, 2):
            weight_m = q - two_k
            inner = zero
            for nu in weak_compositions(weight_m, r):
                inner = inner + reg(k.shifted(nu), mu) * binomial_weight(k, nu)
            block2 = block2 + inner * even_zeta(two_k) * -2

        for j in range(1, r + 1):
            outer = zero
            prefix_weight = sum(k[: j - 1])
            for two_k in range(0, k[j - 1] + 1, 2):
                inner = zero
                for nu in weak_compositions(k[j - 1] - two_k, r):
                    others = k[: j - 1] + k[j:]
                    weight = neg_binomial(q, nu[j - 1]) * binomial_weight(others, nu[: j - 1] + nu[j:])
                    weight *= _sign(sum(nu[:j]))
                    shifted = k.shifted(nu)
                    head = tuple(reversed(shifted[: j - 1])) + (q + nu[j - 1],)
                    head_mu = tuple(-a for a in reversed(mu[: j - 1])) + (self.product,)
                    inner = inner + reg(shifted[j:], mu[j:]) * self.li(head, head_mu) * weight
                outer = outer + inner * even_zeta(two_k)
            block4 = block4 + outer * (-2 * _sign(q + prefix_weight))

        return dict(zip(BLOCK_NAMES, (block1, block2, block3, block4)))


def _assemble(
    theorem: str,
    kind: str,
    k: Sequence[int],
    q: int,
    colors: Optional[ColorVector],
    eps: Optional[float],
    tolerance: float,
) -> ResidualReport:
    k = MultiIndex(k)
    check_colors(k, colors)
    _check_parameters(k, q, colors)
    eps = settings.default_eps if eps is None else eps
    assembler = ParityAssembler(kind, k, q, colors, eps)

    blocks = assembler.blocks(assembler.reg, RegPoly())
    residual = blocks["block1"] + blocks["block2"] + blocks["block3"] + blocks["block4"]

    # evaluate every reg factor at T first, then assemble; must match the polynomial
    mismatches = []
    for t in REGPOLY_PROBES:
        point = Bounded.from_fraction(t)
        pointwise = assembler.blocks(lambda index, exps: assembler.reg(index, exps).evaluate(point), Bounded.zero())
        value = sum(pointwise.values(), Bounded.zero())
        expected = residual.evaluate(point)
        if not value.contains(expected, slack=tolerance):
            mismatches.append(f"T={t}: pointwise {value.render()} vs polynomial {expected.render()}")

    params = {"k": str(k), "q": q, "kind": kind}
    if colors is not None:
        params["colors"] = str(colors)
    detail = "; ".join(mismatches) if mismatches else None
    report = build_report(
        theorem, params, blocks, residual, tolerance, detail=detail, passed=False if mismatches else None
    )
    logger.debug("%s residual %s", report.key, report.residual)
    return report


def stuffle_parity_residual(k: Sequence[int], q: int, eps: Optional[float] = None) -> ResidualReport:
    if q <= 1:
        raise ParameterError(f"the level-1 parity theorems need q > 1, got {q}")
    return _assemble("parity-stuffle", "stuffle", k, q, None, eps, RESIDUAL_TOLERANCE)


def shuffle_parity_residual(k: Sequence[int], q: int, eps: Optional[float] = None) -> ResidualReport:
    if q <= 1:
        raise ParameterError(f"the level-1 parity theorems need q > 1, got {q}")
    return _assemble("parity-shuffle", "shuffle", k, q, None, eps, RESIDUAL_TOLERANCE)


def cyclotomic_parity_residual(
    k: Sequence[int],
    colors: ColorVector,
    q: int,
    kind: str = "stuffle",
    eps: Optional[float] = None,
) -> ResidualReport:
    """Colored version; q = 1 is allowed when the color product is not 1."""
    if kind not in ("stuffle", "shuffle"):
        raise ParameterError(f"unknown regularization {kind!r}")
    return _assemble(f"cyclotomic-{kind}", kind, k, q, colors, eps, CYCLOTOMIC_TOLERANCE)


def parity_blocks(kind: str, k: Sequence[int], q: int, colors: Optional[ColorVector] = None,
                  eps: Optional[float] = None) -> dict[str, RegPoly]:
    """The four blocks as polynomials in T, without assembling a report."""
    k = MultiIndex(k)
    check_colors(k, colors)
    _check_parameters(k, q, colors)
    assembler = ParityAssembler(kind, k, q, colors, settings.default_eps if eps is None else eps)
    return assembler.blocks(assembler.reg, RegPoly())
