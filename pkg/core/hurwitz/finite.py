"""Exact finite multiple Hurwitz zeta values over integer windows.

    zeta_(m1,m2)(k; s) = sum over m1 < n_1 < ... < n_r < m2 of prod (n_i + s)^(-k_i)

(weak inequalities for the star version, n_r <= m2 for a right-closed window, an
extra factor prod mu_i^(n_i) for colors). Sums run as one pass over the lattice
points keeping the partial sums of every prefix of k.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence, Union

from core.errors import PoleError, UnsupportedWindowError
from core.hurwitz.cyclotomic import CyclotomicNumber
from core.indices import ColorVector, MultiIndex, check_colors
from core.models import IntervalSpec
from core.numeric.bounded import Bounded
from core.numeric.mzv import zeta

logger = logging.getLogger(__name__)

FiniteValue = Union[Fraction, CyclotomicNumber]


def _one(colors: Optional[ColorVector]) -> FiniteValue:
    return Fraction(1) if colors is None or colors.level == 1 else CyclotomicNumber.rational(colors.level, 1)


def _zero(colors: Optional[ColorVector]) -> FiniteValue:
    return Fraction(0) if colors is None or colors.level == 1 else CyclotomicNumber.rational(colors.level, 0)


def eval_finite(
    k: Sequence[int],
    iv: IntervalSpec,
    s: Union[int, Fraction] = 0,
    star: bool = False,
    colors: Optional[ColorVector] = None,
) -> FiniteValue:
    """Exact value of the (star) finite sum; a CyclotomicNumber when colors are given."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if colors is not None and colors.level == 1:
        colors = None
    r = len(k)
    if r == 0:
        return _one(colors)
    if not iv.is_finite:
        raise UnsupportedWindowError(f"window {iv} is infinite; exact evaluation needs a finite window")
    points = iv.lattice_points()
    if not star and r > len(points):
        return _zero(colors)
    s = Fraction(s)
    if s.denominator == 1 and -int(s) in points:
        raise PoleError(f"n + s vanishes at n = {-s} inside the window {iv}")

    sums: list = [_one(colors)] + [_zero(colors)] * r
    order = range(1, r + 1) if star else range(r, 0, -1)
    for point in points:
        base = point + s
        for j in order:
            previous = sums[j - 1]
            term = Fraction(1) / base ** k[j - 1]
            if colors is None:
                sums[j] = sums[j] + previous * term
            else:
                sums[j] = sums[j] + previous.times_monomial(colors.exponents[j - 1] * point, term)
    return sums[r]


def window_value(
    k: Sequence[int],
    lo: int,
    hi: int,
    *,
    closed: bool = False,
    star: bool = False,
    s: Union[int, Fraction] = 0,
    colors: Optional[ColorVector] = None,
) -> FiniteValue:
    """eval_finite over (lo, hi) or (lo, hi]; a window without lattice points is allowed."""
    if lo >= hi:
        return _one(colors) if not k else _zero(colors)
    return eval_finite(k, IntervalSpec(m1=lo, m2=hi, right_closed=closed), s=s, star=star, colors=colors)


def truncated_zeta(k: Sequence[int], m: int) -> Fraction:
    """zeta_(0,M)(k): the sum over 0 < n_1 < ... < n_r < M."""
    return window_value(k, 0, m)


def _right_tail(k: MultiIndex, start: int) -> Bounded:
    """zeta_(start, inf)(k) for start >= 0 and admissible k."""
    tails: dict[int, Bounded] = {len(k): Bounded.one()}
    for i in range(len(k) - 1, -1, -1):
        suffix = k[i:]
        value = zeta(suffix)
        for j in range(i + 1, len(k) + 1):
            value = value - tails[j] * window_value(suffix[: j - i], 0, start, closed=True)
        tails[i] = value
    return tails[0]


def semi_infinite_value(k: Sequence[int], iv: IntervalSpec) -> Bounded:
    """Error-bounded zeta over (m1, inf) with m1 >= 0 or (-inf, m2) with m2 <= 0, at s = 0."""
    k = MultiIndex(k)
    if iv.is_finite:
        return Bounded.from_fraction(eval_finite(k, iv))
    if iv.m1 is None and iv.m2 is None:
        raise UnsupportedWindowError("the window (-inf, inf) is not supported")
    if not k:
        return Bounded.one()
    if iv.m2 is None:
        if iv.m1 < 0:
            raise PoleError(f"the window {iv} contains the pole n = 0")
        return _right_tail(k, iv.m1)
    end = iv.m2 + 1 if iv.right_closed else iv.m2
    if end > 0:
        raise PoleError(f"the window {iv} contains the pole n = 0")
    sign = -1 if k.weight % 2 else 1
    return _right_tail(k.reverse(), -end) * sign


def reflect_window(iv: IntervalSpec) -> IntervalSpec:
    """(m1, m2) -> (-m2, -m1); only open windows reflect onto windows."""
    if iv.right_closed:
        raise UnsupportedWindowError("reflection needs an open window (m1, m2)")
    return IntervalSpec(
        m1=None if iv.m2 is None else -iv.m2,
        m2=None if iv.m1 is None else -iv.m1,
    )
