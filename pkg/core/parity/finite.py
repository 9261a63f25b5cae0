"""Parity identities for finite windows, read off the residues of pi cot(pi s) zeta_(m1,m2)(k; s) / s^q.

Every integer n is a pole of the integrand. Points with -n outside the window give
Taylor residues, points with -n inside give Laurent residues (where zeta itself has a
pole), and the origin picks up the extra pole of s^-q. The residues sum to zero.

Each residue is returned as (constant, {2k: c}) meaning constant + sum c * zeta(2k),
where the key 0 stands for the symbol zeta(0) = -1/2.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from mpmath import mp, mpf

from core.config import settings
from core.errors import ParameterError, UnsupportedWindowError
from core.hurwitz.finite import window_value
from core.indices import MultiIndex
from core.models import IntervalSpec, ResidualReport
from core.numeric.bounded import Bounded, bounded_sum
from core.numeric.mzv import ZETA_ZERO, even_zeta
from core.numeric.tables import PowerTable, rounding_radius, window_sum_mp
from core.parity.reports import build_report
from core.series.expansion import binomial_weight, neg_binomial, weak_compositions
from core.series.residues import residue_at

logger = logging.getLogger(__name__)

PointResidue = tuple[Fraction, dict[int, Fraction]]


def _add(target: dict[int, Fraction], two_k: int, value: Fraction) -> None:
    if value:
        target[two_k] = target.get(two_k, Fraction(0)) + value


def taylor_point(k: MultiIndex, m1: int, m2: int, q: int, n: int) -> Fraction:
    """zeta_(n+m1,n+m2)(k) / n^q for n != 0 with -n outside the window."""
    return window_value(k, n + m1, n + m2) / Fraction(n) ** q


def taylor_origin(k: MultiIndex, m1: int, m2: int, q: int) -> dict[int, Fraction]:
    """-2 sum_{2k+m=q} sum_{|nu|=m} prod binom(-k_l, nu_l) zeta_(m1,m2)(k+nu) zeta(2k)."""
    out: dict[int, Fraction] = {}
    for two_k in range(0, q + 1, 2):
        total = Fraction(0)
        for nu in weak_compositions(q - two_k, len(k)):
            total += binomial_weight(k, nu) * window_value(k.shifted(nu), m1, m2)
        _add(out, two_k, -2 * total)
    return out


def _split(k: Sequence[int], lo: int, hi: int) -> Fraction:
    """sum_j zeta_(lo,0)(k[:j]) zeta_(0,hi)(k[j:])."""
    k = MultiIndex(k)
    return sum(
        (window_value(k[:j], lo, 0) * window_value(k[j:], 0, hi) for j in range(len(k) + 1)),
        Fraction(0),
    )


def laurent_regular(k: MultiIndex, m1: int, m2: int, q: int, n: int) -> Fraction:
    """a_0 / n^q at a Laurent point n != 0."""
    return _split(k, n + m1, n + m2) / Fraction(n) ** q


def laurent_singular(k: MultiIndex, m1: int, m2: int, q: int, n: int) -> dict[int, Fraction]:
    """The principal-part contribution at a Laurent point n != 0; nu_j is counted in |nu|."""
    r = len(k)
    out: dict[int, Fraction] = {}
    for j in range(1, r + 1):
        others = k[: j - 1] + k[j:]
        for two_k in range(0, k[j - 1] + 1, 2):
            total = Fraction(0)
            for nu in weak_compositions(k[j - 1] - two_k, r):
                weight = neg_binomial(q, nu[j - 1]) * binomial_weight(others, nu[: j - 1] + nu[j:])
                shifted = k.shifted(nu)
                head = window_value(shifted[: j - 1], n + m1, 0) / Fraction(n) ** (q + nu[j - 1])
                total += weight * head * window_value(shifted[j:], 0, n + m2)
            _add(out, two_k, -2 * total)
    return out


def origin_regular(k: MultiIndex, m1: int, m2: int, q: int) -> dict[int, Fraction]:
    """-2 sum_{2k+m=q} a_m zeta(2k) at the origin inside the window."""
    out: dict[int, Fraction] = {}
    for two_k in range(0, q + 1, 2):
        total = Fraction(0)
        for nu in weak_compositions(q - two_k, len(k)):
            total += binomial_weight(k, nu) * _split(k.shifted(nu), m1, m2)
        _add(out, two_k, -2 * total)
    return out


def origin_singular(k: MultiIndex, m1: int, m2: int, q: int) -> dict[int, Fraction]:
    """-2 sum_j sum_{2k+m=q+k_j} b_(m,j) zeta(2k) at the origin inside the window."""
    r = len(k)
    out: dict[int, Fraction] = {}
    for j in range(1, r + 1):
        others = k[: j - 1] + k[j:]
        for two_k in range(0, q + k[j - 1] + 1, 2):
            total = Fraction(0)
            for nu in weak_compositions(q + k[j - 1] - two_k, r - 1):
                shifted = others.shifted(nu)
                head = window_value(shifted[: j - 1], m1, 0)
                total += binomial_weight(others, nu) * head * window_value(shifted[j - 1:], 0, m2)
            _add(out, two_k, -2 * total)
    return out


def fold(residue: PointResidue) -> PointResidue:
    """Apply zeta(0) = -1/2 to the key 0 and drop zero coefficients."""
    constant, coefficients = residue
    constant = constant + coefficients.get(0, Fraction(0)) * ZETA_ZERO
    return constant, {two_k: c for two_k, c in coefficients.items() if two_k > 0 and c}


def residue_value(residue: PointResidue) -> Bounded:
    constant, coefficients = residue
    total = Bounded.from_fraction(constant)
    for two_k, c in coefficients.items():
        total = total + even_zeta(two_k) * c
    return total


def _merge(*parts: PointResidue) -> PointResidue:
    constant = Fraction(0)
    coefficients: dict[int, Fraction] = {}
    for part_constant, part_coefficients in parts:
        constant += part_constant
        for two_k, c in part_coefficients.items():
            _add(coefficients, two_k, c)
    return constant, coefficients


def transcribed_residue(k: MultiIndex, m1: int, m2: int, q: int, n: int) -> PointResidue:
    """Residue at n as transcribed from the theorem blocks."""
    inside = -m2 < n < -m1
    if n == 0:
        if inside:
            return _merge((Fraction(0), origin_regular(k, m1, m2, q)), (Fraction(0), origin_singular(k, m1, m2, q)))
        return Fraction(0), taylor_origin(k, m1, m2, q)
    if inside:
        return _merge((laurent_regular(k, m1, m2, q, n), {}), (Fraction(0), laurent_singular(k, m1, m2, q, n)))
    return taylor_point(k, m1, m2, q, n), {}


def cross_check(k: MultiIndex, m1: int, m2: int, q: int, points: Sequence[int]) -> list[str]:
    """Compare the transcription with the series-based residue engine at each point."""
    iv = IntervalSpec(m1=m1, m2=m2)
    mismatches = []
    for n in points:
        expected = residue_at("cot", q, k, iv, n).folded()
        expected = expected[0], {two_k: c for two_k, c in expected[1].items() if c}
        got = fold(transcribed_residue(k, m1, m2, q, n))
        if got != expected:
            mismatches.append(f"n={n}: blocks {got} vs residue {expected}")
    return mismatches


def _taylor_sum(k: MultiIndex, m1: int, m2: int, q: int, start: int, stop: int) -> Bounded:
    """sum over start <= n <= stop, n != 0, of zeta_(n+m1,n+m2)(k) / n^q in floating point."""
    table = PowerTable()
    mid = mpf(0)
    rad = mpf(0)
    magnitude = mpf(0)
    count = 0
    for n in range(start, stop + 1):
        if n == 0:
            continue
        window = window_sum_mp(k, n + m1, n + m2, table)
        inverse = mpf(n) ** (-q)
        term = window.mid * inverse
        mid += term
        magnitude += abs(term)
        rad += window.rad * abs(inverse)
        count += 1
    return Bounded(mid, rad + rounding_radius(magnitude, 2 * count + 2))


def _tail_allowance(k: MultiIndex, m1: int, m2: int, q: int, trunc: int) -> mpf:
    """Both n-sums beyond |n| = trunc: 2 binom(W, r) (trunc - W')^(-|k|) trunc^(1-q) / (q-1)."""
    width = m2 - m1 - 1
    reach = max(abs(m1), abs(m2))
    chains = comb(width, len(k))
    return 2 * chains * mpf(trunc - reach) ** (-k.weight) * mpf(trunc) ** (1 - q) / (q - 1)


def _validate(k: Sequence[int], q: int, iv: IntervalSpec, trunc: Optional[int]) -> tuple[MultiIndex, int]:
    k = MultiIndex(k)
    if q <= 1:
        raise ParameterError(f"the finite parity theorems need q > 1, got {q}")
    if not iv.is_finite or iv.right_closed:
        raise UnsupportedWindowError(f"the finite parity theorems need a finite open window, got {iv}")
    trunc = settings.trunc_n if trunc is None else trunc
    reach = max(abs(iv.m1), abs(iv.m2))
    if trunc <= reach + 1:
        raise ParameterError(f"truncation {trunc} must exceed the window reach {reach} + 1")
    return k, trunc


def _check_points(m1: int, m2: int) -> list[int]:
    reach = max(abs(m1), abs(m2)) + 2
    return list(range(-reach, reach + 1))


def _report(theorem: str, k: MultiIndex, q: int, iv: IntervalSpec, trunc: int, blocks: dict[str, Bounded]) -> ResidualReport:
    residual = bounded_sum(blocks.values())
    allowance = _tail_allowance(k, iv.m1, iv.m2, q, trunc)
    mismatches = cross_check(k, iv.m1, iv.m2, q, _check_points(iv.m1, iv.m2))
    params = {"k": str(k), "q": q, "window": str(iv), "trunc": trunc}
    report = build_report(
        theorem,
        params,
        blocks,
        residual,
        allowance,
        detail="; ".join(mismatches) if mismatches else None,
        passed=False if mismatches else None,
    )
    logger.info("%s: residual %s (allowance %s)", report.key, report.residual, mp.nstr(allowance, 3))
    return report


def _laurent_points(m1: int, m2: int) -> list[int]:
    return [n for n in range(-m2 + 1, -m1) if n != 0]


def finite_parity_residual(
    k: Sequence[int], q: int, iv: IntervalSpec, trunc: Optional[int] = None
) -> ResidualReport:
    """Five blocks for a window on one side of 0 (m2 <= 0 or m1 >= 0)."""
    k, trunc = _validate(k, q, iv, trunc)
    m1, m2 = iv.m1, iv.m2
    if not (m2 <= 0 or m1 >= 0):
        raise ParameterError(f"the window {iv} straddles 0; use mixed_window_parity_residual")
    points = _laurent_points(m1, m2)
    blocks = {
        "block1": _taylor_sum(k, m1, m2, q, -trunc, -m2),
        "block2": _taylor_sum(k, m1, m2, q, -m1, trunc),
        "block3": residue_value((Fraction(0), taylor_origin(k, m1, m2, q))),
        "block4": Bounded.from_fraction(sum((laurent_regular(k, m1, m2, q, n) for n in points), Fraction(0))),
        "block5": residue_value(_merge(*((Fraction(0), laurent_singular(k, m1, m2, q, n)) for n in points))),
    }
    return _report("finite-parity", k, q, iv, trunc, blocks)


def mixed_window_parity_residual(
    k: Sequence[int], q: int, iv: IntervalSpec, trunc: Optional[int] = None
) -> ResidualReport:
    """Six blocks for a window around 0 (m1 < 0 < m2); the origin is a Laurent point."""
    k, trunc = _validate(k, q, iv, trunc)
    m1, m2 = iv.m1, iv.m2
    if not m1 < 0 < m2:
        raise ParameterError(f"the window {iv} does not contain 0; use finite_parity_residual")
    points = _laurent_points(m1, m2)
    blocks = {
        "block1": _taylor_sum(k, m1, m2, q, -trunc, -m2),
        "block2": _taylor_sum(k, m1, m2, q, -m1, trunc),
        "block3": residue_value((Fraction(0), origin_regular(k, m1, m2, q))),
        "block4": residue_value((Fraction(0), origin_singular(k, m1, m2, q))),
        "block5": Bounded.from_fraction(sum((laurent_regular(k, m1, m2, q, n) for n in points), Fraction(0))),
        "block6": residue_value(_merge(*((Fraction(0), laurent_singular(k, m1, m2, q, n)) for n in points))),
    }
    return _report("mixed-window-parity", k, q, iv, trunc, blocks)
