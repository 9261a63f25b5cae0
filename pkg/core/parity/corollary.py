"""The window (0, M) specialised with the truncation formula.

Blocks (K = rev k, P the truncation of the far-window sum, Nc of the star sum):

    C1 = sum_j (-1)^j sum_{n=1}^{Nc} zeta*_(0,n](rev k[:j]) zeta_(0,n+M)(k[j:]) / n^q
    C2 = -2 sum_{2k+m=q} sum_{|nu|=m} prod binom(-k_l, nu_l) zeta_(0,M)(k+nu) zeta(2k)
    C3 = sum_{p<M} sum_j (-1)^(q+|k[:j]|) zeta_(0,p)(rev k[:j]) zeta_(0,M-p)(k[j:]) / p^q
    C4 = the principal-part block over the same p, reflected to positive p
    C5 = (-1)^(|k|+q) sum_{p=M}^{P} zeta_(p-M,p)(K) / p^q

As M grows C1..C4 approach the stuffle-regularized blocks at T = zeta_(0,M)(1) and
C5 vanishes; the distance is reported as the limit gap.
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Optional, Sequence

from mpmath import mp, mpf

from core.config import settings
from core.errors import ParameterError
from core.indices import MultiIndex
from core.models import ResidualReport
from core.numeric.bounded import Bounded, bounded_sum
from core.numeric.mzv import even_zeta
from core.numeric.tables import Accumulator, harmonic, running_radius, running_sums, truncated_zeta_mp
from core.parity.regularized import ParityAssembler
from core.parity.reports import build_report
from core.series.expansion import binomial_weight, neg_binomial, weak_compositions

logger = logging.getLogger(__name__)


def _sign(power: int) -> int:
    return -1 if power % 2 else 1


class SumTables:
    """Running prefix sums shared by all blocks of one instance."""

    def __init__(self, count: int, q: int):
        self.count = count
        self.inverse = [mpf(0)] + [mpf(n) ** (-q) for n in range(1, count + 1)]

    def strict(self, index: Sequence[int]) -> tuple:
        return running_sums(index, self.count)

    def star(self, index: Sequence[int]) -> tuple:
        return running_sums(index, self.count, star=True)

    def error(self, value, depth: int) -> mpf:
        return running_radius(value, self.count, depth)


def _product_sum(tables: SumTables, left: Sequence[int], left_star: bool, right: Sequence[int],
                 pairs, weight_of) -> Bounded:
    """sum over (i, a, b) of weight_of(i) * left[a] * right[b]."""
    left_values = tables.star(left) if left_star else tables.strict(left)
    right_values = tables.strict(right)
    acc = Accumulator()
    for i, a, b in pairs:
        x = left_values[a]
        y = right_values[b]
        w = weight_of(i)
        error = (abs(x) * tables.error(y, len(right)) + abs(y) * tables.error(x, len(left))) * abs(w)
        acc.add(x * y * w, error)
    return acc.result()


def star_block(k: MultiIndex, q: int, m: int, cutoff: int, tables: SumTables) -> Bounded:
    r = len(k)
    total = Bounded.zero()
    for j in range(r + 1):
        pairs = ((n, n, n + m - 1) for n in range(1, cutoff + 1))
        part = _product_sum(tables, k[:j].reverse(), True, k[j:], pairs, lambda n: tables.inverse[n])
        total = total + part * _sign(j)
    return total


def origin_block(k: MultiIndex, q: int, m: int) -> Bounded:
    total = Bounded.zero()
    for two_k in range(0, q + 1, 2):
        inner = Bounded.zero()
        for nu in weak_compositions(q - two_k, len(k)):
            inner = inner + truncated_zeta_mp(k.shifted(nu), m) * binomial_weight(k, nu)
        total = total + inner * even_zeta(two_k) * -2
    return total


def negative_block(k: MultiIndex, q: int, m: int, tables: SumTables) -> Bounded:
    r = len(k)
    total = Bounded.zero()
    for j in range(r + 1):
        pairs = ((p, p - 1, m - p - 1) for p in range(1, m))
        part = _product_sum(tables, k[:j].reverse(), False, k[j:], pairs, lambda p: tables.inverse[p])
        total = total + part * _sign(q + sum(k[:j]))
    return total


def negative_principal_block(k: MultiIndex, q: int, m: int, tables: SumTables) -> Bounded:
    r = len(k)
    total = Bounded.zero()
    for j in range(1, r + 1):
        others = k[: j - 1] + k[j:]
        for two_k in range(0, k[j - 1] + 1, 2):
            inner = Bounded.zero()
            for nu in weak_compositions(k[j - 1] - two_k, r):
                weight = neg_binomial(q, nu[j - 1]) * binomial_weight(others, nu[: j - 1] + nu[j:])
                shifted = k.shifted(nu)
                head = shifted[: j - 1]
                exponent = q + nu[j - 1]
                pairs = ((p, p - 1, m - p - 1) for p in range(1, m))
                part = _product_sum(tables, head.reverse(), False, shifted[j:], pairs,
                                    lambda p, e=exponent: mpf(p) ** (-e))
                inner = inner + part * (weight * _sign(head.weight + exponent))
            total = total + inner * even_zeta(two_k) * -2
    return total


def far_window_block(k: MultiIndex, q: int, m: int, cutoff: int, tables: SumTables) -> Bounded:
    """(-1)^(|k|+q) sum_{p=M}^{cutoff} zeta_(p-M,p)(rev k) / p^q via the truncation formula."""
    r = len(k)
    total = Bounded.zero()
    for j in range(r + 1):
        pairs = ((p, p - m, p - 1) for p in range(m, cutoff + 1))
        part = _product_sum(tables, k[r - j:], True, k[: r - j].reverse(), pairs, lambda p: tables.inverse[p])
        total = total + part * _sign(j)
    return total * _sign(k.weight + q)


def window_tail(k: MultiIndex, q: int, m: int, cutoff: int, stretch) -> mpf:
    """sum_{n>cutoff} (stretch M / n)^r / (r! n^q), bounding zeta over an M-point window of {1}_r."""
    r = len(k)
    return (mpf(stretch) * m) ** r * mpf(cutoff) ** (1 - q - r) / (factorial(r) * (q + r - 1))


def truncation_allowance(k: MultiIndex, q: int, m: int, cutoff: int) -> mpf:
    star_tail = window_tail(k, q, m, cutoff, 1)
    far_tail = window_tail(k, q, m, cutoff, mpf(cutoff) / (cutoff - m))
    return star_tail + far_tail


def _limit_blocks(k: MultiIndex, q: int, m: int, cutoff: int, tables: SumTables,
                  eps: Optional[float]) -> dict[str, Bounded]:
    """Stuffle-regularized blocks at T = H_(M-1); the star block uses the same cutoff as C1."""
    t = harmonic(m - 1)
    assembler = ParityAssembler("stuffle", k, q, None, eps)
    blocks = assembler.blocks(lambda index, exps: assembler.reg(index, exps).evaluate(t), Bounded.zero())
    star = Bounded.zero()
    for j in range(len(k) + 1):
        head = k[:j].reverse()
        values = tables.star(head)
        acc = Accumulator()
        for n in range(1, cutoff + 1):
            acc.add(values[n] * tables.inverse[n], tables.error(values[n], len(head)) * tables.inverse[n])
        star = star + acc.result() * assembler.reg(k[j:], assembler.exponents[j:]).evaluate(t) * _sign(j)
    return {
        "stuffle1_trunc": star,
        "stuffle2": blocks["block2"],
        "stuffle34": blocks["block3"] + blocks["block4"],
    }


def corollary_M_residual(
    k: Sequence[int], q: int, m: int, cutoff: Optional[int] = None, eps: Optional[float] = None
) -> ResidualReport:
    """Identity residual over the window (0, M) with truncated infinite sums, plus the limit gap."""
    k = MultiIndex(k)
    if q <= 1:
        raise ParameterError(f"the window (0, M) identity needs q > 1, got {q}")
    if m < 2:
        raise ParameterError(f"M must be at least 2, got {m}")
    cutoff = settings.corollary_trunc_factor * m if cutoff is None else cutoff
    if cutoff < 2 * m:
        raise ParameterError(f"cutoff {cutoff} must be at least 2M = {2 * m}")
    eps = settings.default_eps if eps is None else eps

    tables = SumTables(cutoff + m, q)
    blocks = {
        "block1": star_block(k, q, m, cutoff, tables),
        "block2": origin_block(k, q, m),
        "block3": negative_block(k, q, m, tables),
        "block4": negative_principal_block(k, q, m, tables),
        "block5": far_window_block(k, q, m, cutoff, tables),
    }
    residual = bounded_sum(blocks.values())
    allowance = truncation_allowance(k, q, m, cutoff)

    limit = _limit_blocks(k, q, m, cutoff, tables, eps)
    gap = (
        abs((blocks["block1"] - limit["stuffle1_trunc"]).mid)
        + abs((blocks["block2"] - limit["stuffle2"]).mid)
        + abs((blocks["block3"] + blocks["block4"] - limit["stuffle34"]).mid)
        + abs(blocks["block5"].mid)
    )
    params = {"k": str(k), "q": q, "M": m, "cutoff": cutoff}
    report = build_report("corollary-M", params, {**blocks, **limit}, residual, allowance, limit_gap=gap)
    logger.info("%s: residual %s, limit gap %s", report.key, report.residual, mp.nstr(gap, 3))
    return report


def decay_ratios(reports: Sequence[ResidualReport]) -> list[float]:
    """Successive limit-gap ratios along increasing M."""
    gaps = [report.limit_gap for report in reports]
    return [later / earlier if earlier else 0.0 for earlier, later in zip(gaps, gaps[1:])]
