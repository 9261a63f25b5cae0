"""Numeric checks of the growth and tail estimates behind the regularized parity theorems.

Each check evaluates the left side with a certified upper bound and reports the margin
to the right side. Lemmas stated with an unspecified constant c are checked by
calibrating c at the smallest M of the grid (times CALIBRATION_SLACK) and requiring
the bound at every larger M.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence

from mpmath import mp, mpf

from core.config import settings
from core.errors import AdmissibilityError, ParameterError
from core.indices import MultiIndex, repeated
from core.models import ResidualReport
from core.numeric.bounded import Bounded
from core.numeric.mzv import zeta
from core.numeric.tables import Accumulator, log_power_tail, running_radius, running_sums, truncated_zeta_mp
from core.parity.corollary import SumTables, far_window_block, window_tail
from core.parity.reports import build_report

logger = logging.getLogger(__name__)

CALIBRATION_SLACK = 2
POSITIVE_CUTOFF_FACTOR = 16

LEMMAS = ("star-log", "tail", "positive", "far-window", "negative")


def _log_grid(n_max: int) -> list[int]:
    """2, 10, 100, ... up to n_max, always ending with n_max."""
    grid = [2]
    n = 10
    while n < n_max:
        grid.append(n)
        n *= 10
    if n_max > 2:
        grid.append(n_max)
    return grid


def _margin_report(lemma: str, params: dict, lhs: Bounded, bound, detail: Optional[str] = None,
                   extra: Optional[dict] = None) -> ResidualReport:
    upper = lhs.upper()
    margin = mpf(bound) - upper
    blocks = {"lhs": lhs, "bound": mpf(bound), "margin": margin, **(extra or {})}
    return build_report(
        f"bound-{lemma}",
        params,
        blocks,
        lhs,
        bound,
        detail=detail or f"margin {mp.nstr(margin, 6)}",
        passed=bool(margin > 0),
    )


def star_log_bound(r: int, n_max: int) -> ResidualReport:
    """zeta*_(0,n]({1}_r) < 2^(r-1) (1 + ln n)^r; {1}_r dominates every index of depth r."""
    if r < 1 or n_max < 2:
        raise ParameterError(f"star-log bound needs r >= 1 and n_max >= 2, got r={r}, n_max={n_max}")
    values = running_sums(repeated(1, r), n_max, star=True)
    worst: Optional[tuple[mpf, int, Bounded, mpf]] = None
    for n in _log_grid(n_max):
        lhs = Bounded(values[n], running_radius(values[n], n, r))
        bound = mpf(2) ** (r - 1) * (1 + mp.log(n)) ** r
        margin = bound - lhs.upper()
        if worst is None or margin < worst[0]:
            worst = (margin, n, lhs, bound)
    _, n, lhs, bound = worst
    return _margin_report("star-log", {"r": r, "n_max": n_max}, lhs, bound, extra={"worst_n": n})


def tail_bound(k: Sequence[int], n: int, eps: Optional[float] = None) -> ResidualReport:
    """|zeta(k) - zeta_(0,N)(k)| < 2r (1 + ln N)^(r-1) / N for admissible k."""
    k = MultiIndex(k)
    if not k or not k.is_admissible:
        raise AdmissibilityError(f"tail bound needs a non-empty admissible index, got ({k})")
    r = len(k)
    eps = settings.default_eps if eps is None else eps
    lhs = zeta(k, eps) - truncated_zeta_mp(k, n)
    bound = 2 * r * (1 + mp.log(n)) ** (r - 1) / n
    return _margin_report("tail", {"k": str(k), "N": n}, lhs, bound)


def _calibrated(lemma: str, params: dict, m_list: Sequence[int], evaluate: Callable[[int], Bounded],
                shape: Callable[[int], mpf]) -> ResidualReport:
    """|lhs(M)| < c shape(M) with c fitted at min(M) and widened by the slack factor."""
    grid = sorted(set(m_list))
    if len(grid) < 2:
        raise ParameterError(f"{lemma} needs at least two values of M to calibrate, got {list(m_list)}")
    values = {m: evaluate(m) for m in grid}
    first = grid[0]
    c = CALIBRATION_SLACK * values[first].upper() / shape(first)
    worst = None
    for m in grid[1:]:
        bound = c * shape(m)
        margin = bound - values[m].upper()
        if worst is None or margin < worst[0]:
            worst = (margin, m, values[m], bound)
    _, m, lhs, bound = worst
    ratios = {f"scaled@M={g}": values[g].upper() / shape(g) for g in grid}
    return _margin_report(lemma, {**params, "M": ",".join(map(str, grid))}, lhs, bound,
                          extra={"c": c, "worst_M": m, **ratios})


def _positive_lhs(head: MultiIndex, s: int, q: int, m: int) -> Bounded:
    """sum_n zeta*_(0,n](head) (H_(n+M-1)^s - H_(M-1)^s) / n^q, truncated with an integral tail."""
    cutoff = POSITIVE_CUTOFF_FACTOR * m
    star = running_sums(head, cutoff, star=True)
    harmonic_values = running_sums((1,), cutoff + m)
    base = harmonic_values[m - 1] ** s
    j = len(head)
    acc = Accumulator()
    for n in range(1, cutoff + 1):
        weight = mpf(n) ** (-q)
        term = star[n] * (harmonic_values[n + m - 1] ** s - base) * weight
        error = (running_radius(star[n], cutoff, j) * harmonic_values[n + m - 1] ** s
                 + star[n] * s * running_radius(harmonic_values[n + m - 1], cutoff + m, 1)
                 * harmonic_values[n + m - 1] ** (s - 1)) * weight
        acc.add(term, error)
    # beyond the cutoff: zeta* < max(1, 2^(j-1)) (1 + ln n)^j and H_(n+M-1) < 1 + ln 2 + ln n
    scale = max(mpf(1), mpf(2) ** (j - 1))
    tail = scale * log_power_tail(cutoff, j + s, q, shift=1 + mp.log(2))
    return acc.result().widened(tail)


def positive_side_bound(head: Sequence[int], s: int, q: int, m_list: Sequence[int]) -> ResidualReport:
    head = MultiIndex(head)
    if q <= 1 or s < 0:
        raise ParameterError(f"positive-side bound needs q > 1 and s >= 0, got q={q}, s={s}")
    j = len(head)
    return _calibrated(
        "positive",
        {"k": str(head), "s": s, "q": q},
        m_list,
        lambda m: _positive_lhs(head, s, q, m),
        lambda m: mp.log(m) ** (j + s) / m,
    )


def far_window_bound(k: Sequence[int], q: int, m: int, cutoff: Optional[int] = None) -> ResidualReport:
    """|sum_{n<=-M} zeta_(n,n+M)(k) / n^q| < 2^r (r+2) ln^r(M) / M for k_r > 1."""
    k = MultiIndex(k)
    if not k or not k.is_admissible:
        raise AdmissibilityError(f"far-window bound needs k_r > 1, got ({k})")
    if q <= 1:
        raise ParameterError(f"far-window bound needs q > 1, got {q}")
    cutoff = settings.corollary_trunc_factor * m if cutoff is None else cutoff
    if cutoff < 2 * m:
        raise ParameterError(f"cutoff {cutoff} must be at least 2M = {2 * m}")
    tables = SumTables(cutoff + m, q)
    partial = far_window_block(k, q, m, cutoff, tables)
    lhs = partial.widened(window_tail(k, q, m, cutoff, mpf(cutoff) / (cutoff - m)))
    r = len(k)
    bound = mpf(2) ** r * (r + 2) * mp.log(m) ** r / m
    return _margin_report("far-window", {"k": str(k), "q": q, "M": m, "cutoff": cutoff}, lhs, bound)


def _negative_lhs(k: MultiIndex, s: int, q: int, m: int, eps: float) -> Bounded:
    """Reflected to p = -n:
    |sum_{p<M} zeta_(0,p)(K)/p^q (H_(M-p-1)^s - H_(M-1)^s) - H_(M-1)^s (zeta(K,q) - zeta_(0,M)(K,q))|
    with K = rev k."""
    rev = k.reverse()
    strict = running_sums(rev, m)
    harmonic_values = running_sums((1,), m)
    base = harmonic_values[m - 1] ** s
    acc = Accumulator()
    for p in range(1, m):
        weight = mpf(p) ** (-q)
        x = strict[p - 1]
        h = harmonic_values[m - p - 1] ** s
        error = running_radius(x, m, len(rev)) * base * weight
        error += x * s * running_radius(harmonic_values[m - 1], m, 1) * base * weight
        acc.add(x * (h - base) * weight, error)
    full = rev + (q,)
    remainder = zeta(full, eps) - truncated_zeta_mp(full, m)
    harmonic_power = Bounded(base, s * running_radius(harmonic_values[m - 1], m, 1) * base)
    return acc.result() - remainder * harmonic_power


def negative_side_bound(k: Sequence[int], s: int, q: int, m_list: Sequence[int],
                        eps: Optional[float] = None) -> ResidualReport:
    k = MultiIndex(k)
    if q <= 1 or s < 0:
        raise ParameterError(f"negative-side bound needs q > 1 and s >= 0, got q={q}, s={s}")
    eps = settings.default_eps if eps is None else eps
    r = len(k)
    return _calibrated(
        "negative",
        {"k": str(k), "s": s, "q": q},
        m_list,
        lambda m: _negative_lhs(k, s, q, m, eps),
        lambda m: mp.log(m) ** (r + s) / mp.sqrt(m),
    )


def bound_suite(
    n_max: int = 10_000,
    m_list: Sequence[int] = (2**8, 2**10, 2**12),
    lemmas: Sequence[str] = LEMMAS,
    eps: Optional[float] = None,
) -> list[ResidualReport]:
    """Every lemma over its default grid; reports are ordered by lemma then parameters."""
    unknown = set(lemmas) - set(LEMMAS)
    if unknown:
        raise ParameterError(f"unknown lemma(s) {sorted(unknown)}; choose from {', '.join(LEMMAS)}")
    reports: list[ResidualReport] = []
    if "star-log" in lemmas:
        reports += [star_log_bound(r, n_max) for r in (1, 2, 3)]
    if "tail" in lemmas:
        sizes = [n for n in (10**2, 10**3, 10**4) if n <= n_max] or [n_max]
        reports += [tail_bound(k, n, eps) for k in ((2,), (1, 2), (1, 1, 2)) for n in sizes]
    if "positive" in lemmas:
        reports += [positive_side_bound(head, s, 2, m_list) for head in ((), (1,), (2, 1)) for s in (1, 2)]
    if "far-window" in lemmas:
        reports += [far_window_bound(k, 2, m_list[-1]) for k in ((2,), (1, 2), (2, 1, 2))]
    if "negative" in lemmas:
        reports += [negative_side_bound(k, s, 2, m_list, eps) for k in ((1,), (2, 1)) for s in (1, 2)]
    for report in reports:
        logger.info("%s: %s", report.key, report.detail)
    return reports
