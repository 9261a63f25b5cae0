"""Exact structural identities of the finite (colored) multiple Hurwitz zeta values.

Each check evaluates both sides with exact arithmetic and returns them; equality is
decided exactly (rationals, or cyclotomic numbers reduced modulo Phi_N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from core.errors import PreconditionError
from core.hurwitz.cyclotomic import CyclotomicNumber
from core.hurwitz.finite import FiniteValue, eval_finite, reflect_window, window_value
from core.indices import ColorVector, MultiIndex, check_colors
from core.models import IntervalSpec
from core.numeric.bounded import fraction_to_mpf
from core.series.expansion import binomial_weight, weak_compositions

IDENTITIES: tuple[str, ...] = (
    "translation",
    "decomposition",
    "decomposition-point",
    "reflection",
    "antipode",
    "truncation",
    "expansion",
)


@dataclass
class IdentityResult:
    name: str
    lhs: object
    rhs: object
    slack: Fraction = Fraction(0)

    @property
    def holds(self) -> bool:
        difference = self.lhs - self.rhs
        if isinstance(difference, CyclotomicNumber):
            if not self.slack:
                return difference.is_zero()
            return difference.to_bounded().upper() <= fraction_to_mpf(self.slack)
        return abs(difference) <= self.slack


def _colors_part(colors: Optional[ColorVector], start: int, stop: int) -> Optional[ColorVector]:
    if colors is None:
        return None
    return ColorVector(level=colors.level, exponents=colors.exponents[start:stop])


def _scaled_by_root(value: FiniteValue, colors: Optional[ColorVector], exponent: int) -> FiniteValue:
    """value * zeta_N^exponent (no-op without colors)."""
    if colors is None or colors.level == 1:
        return value
    return value * CyclotomicNumber.monomial(colors.level, exponent)


def _sign(power: int) -> int:
    return -1 if power % 2 else 1


def check_translation(
    k: Sequence[int], iv: IntervalSpec, s: Union[int, Fraction], n: int, colors: Optional[ColorVector] = None
) -> IdentityResult:
    """zeta_(m1,m2)(k; s) = (mu_1...mu_r)^(-n) zeta_(m1+n,m2+n)(k; s-n)."""
    k = MultiIndex(k)
    lhs = eval_finite(k, iv, s, colors=colors)
    moved = eval_finite(k, iv.shifted(n), Fraction(s) - n, colors=colors)
    exponent = 0 if colors is None else -n * colors.product_exponent()
    return IdentityResult("translation", lhs, _scaled_by_root(moved, colors, exponent))


def check_decomposition(
    k: Sequence[int], iv: IntervalSpec, s: Union[int, Fraction], n: int, colors: Optional[ColorVector] = None
) -> IdentityResult:
    """Split at m1 < n < m2 with the point n on the left: sum_j zeta_(m1,n](k_[1,j]) zeta_(n,m2)(k_(j,r])."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if not iv.m1 < n < iv.m2:
        raise PreconditionError(f"split point {n} must lie strictly inside {iv}")
    lhs = eval_finite(k, iv, s, colors=colors)
    rhs = Fraction(0)
    for j in range(len(k) + 1):
        left = window_value(k[:j], iv.m1, n, closed=True, s=s, colors=_colors_part(colors, 0, j))
        right = window_value(k[j:], n, iv.m2, closed=iv.right_closed, s=s, colors=_colors_part(colors, j, len(k)))
        rhs = rhs + left * right
    return IdentityResult("decomposition", lhs, rhs)


def check_decomposition_point(
    k: Sequence[int], iv: IntervalSpec, s: Union[int, Fraction], n: int, colors: Optional[ColorVector] = None
) -> IdentityResult:
    """Split with n excluded from both sides and its term x_j^n / (s+n)^k_j written out."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if not iv.m1 < n < iv.m2:
        raise PreconditionError(f"split point {n} must lie strictly inside {iv}")
    s = Fraction(s)
    r = len(k)
    lhs = eval_finite(k, iv, s, colors=colors)
    rhs = Fraction(0)
    for j in range(r + 1):
        left = window_value(k[:j], iv.m1, n, s=s, colors=_colors_part(colors, 0, j))
        right = window_value(k[j:], n, iv.m2, closed=iv.right_closed, s=s, colors=_colors_part(colors, j, r))
        rhs = rhs + left * right
    if s + n != 0:
        for j in range(1, r + 1):
            left = window_value(k[: j - 1], iv.m1, n, s=s, colors=_colors_part(colors, 0, j - 1))
            right = window_value(k[j:], n, iv.m2, closed=iv.right_closed, s=s, colors=_colors_part(colors, j, r))
            term = left * right * (Fraction(1) / (s + n) ** k[j - 1])
            exponent = 0 if colors is None else colors.exponents[j - 1] * n
            rhs = rhs + _scaled_by_root(term, colors, exponent)
    return IdentityResult("decomposition-point", lhs, rhs)


def check_reflection(
    k: Sequence[int], iv: IntervalSpec, s: Union[int, Fraction], colors: Optional[ColorVector] = None
) -> IdentityResult:
    """zeta_(m1,m2)(k; s) = (-1)^|k| zeta_(-m2,-m1)(rev k; -s), colors reversed and inverted."""
    k = MultiIndex(k)
    lhs = eval_finite(k, iv, s, colors=colors)
    mirrored = None if colors is None else colors.reverse().inverse()
    rhs = eval_finite(k.reverse(), reflect_window(iv), -Fraction(s), colors=mirrored) * _sign(k.weight)
    return IdentityResult("reflection", lhs, rhs)


def check_antipode(
    k: Sequence[int], iv: IntervalSpec, s: Union[int, Fraction], colors: Optional[ColorVector] = None
) -> IdentityResult:
    """sum_j (-1)^j zeta*(k_j..k_1; s) zeta(k_(j,r]; s) = 0 on one window, for r >= 1."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if not k:
        raise PreconditionError("the antipode relation needs a non-empty index")
    r = len(k)
    total = Fraction(0)
    for j in range(r + 1):
        head_colors = None if colors is None else _colors_part(colors, 0, j).reverse()
        head = eval_finite(k[:j].reverse(), iv, s, star=True, colors=head_colors)
        tail = eval_finite(k[j:], iv, s, colors=_colors_part(colors, j, r))
        total = total + head * tail * _sign(j)
    return IdentityResult("antipode", total, Fraction(0))


def check_truncation(
    k: Sequence[int], m1: int, m2: int, s: Union[int, Fraction] = 0, colors: Optional[ColorVector] = None
) -> IdentityResult:
    """zeta_(m1,m2)(k; s) = sum_j (-1)^j zeta*_(0,m1](k_j..k_1; s) zeta_(0,m2)(k_(j,r]; s), 0 < m1 < m2."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if not 0 < m1 < m2:
        raise PreconditionError(f"truncation needs 0 < m1 < m2, got ({m1},{m2})")
    r = len(k)
    lhs = window_value(k, m1, m2, s=s, colors=colors)
    rhs = Fraction(0)
    for j in range(r + 1):
        head_colors = None if colors is None else _colors_part(colors, 0, j).reverse()
        head = window_value(k[:j].reverse(), 0, m1, closed=True, star=True, s=s, colors=head_colors)
        tail = window_value(k[j:], 0, m2, s=s, colors=_colors_part(colors, j, r))
        rhs = rhs + head * tail * _sign(j)
    return IdentityResult("truncation", lhs, rhs)


def _require_one_sided(iv: IntervalSpec) -> None:
    if not iv.is_finite:
        raise PreconditionError(f"the expansion in s needs a finite window, got {iv}")
    if 0 in iv.lattice_points():
        raise PreconditionError(f"the window {iv} straddles 0; zeta(k; s) is singular at s = 0")


def expansion_coeffs(k: Sequence[int], iv: IntervalSpec, order: int, colors: Optional[ColorVector] = None) -> list:
    """Coefficients of s^m, m <= order, of zeta_(m1,m2)(k; s) around s = 0."""
    k = MultiIndex(k)
    _require_one_sided(iv)
    coefficients = []
    for m in range(order + 1):
        total = Fraction(0)
        for nu in weak_compositions(m, len(k)):
            total = total + eval_finite(k.shifted(nu), iv, colors=colors) * binomial_weight(k, nu)
        coefficients.append(total)
    return coefficients


def check_expansion(
    k: Sequence[int], iv: IntervalSpec, order: int = 12, colors: Optional[ColorVector] = None
) -> IdentityResult:
    """Compare the truncated power series at s = rho/10 with the direct sum.

    rho is the smallest |n| in the window. Each of the binom(W, r) chains has s^m
    coefficient at most binom(m + |k| - 1, m) rho^(-|k| - m), which bounds the
    omitted terms by a geometric series.
    """
    k = MultiIndex(k)
    _require_one_sided(iv)
    points = list(iv.lattice_points())
    coefficients = expansion_coeffs(k, iv, order, colors)
    if not k or not points:
        return IdentityResult("expansion", coefficients[0], eval_finite(k, iv, colors=colors))
    rho = min(abs(p) for p in points)
    s = Fraction(rho, 10)
    series = Fraction(0)
    for m, c in enumerate(coefficients):
        series = series + c * s**m
    direct = eval_finite(k, iv, s, colors=colors)

    weight = k.weight
    first = Fraction(comb(order + weight, order + 1), 10 ** (order + 1))
    ratio = Fraction(order + 1 + weight, 10 * (order + 2))
    tail = first / (1 - ratio) if ratio < 1 else None
    if tail is None:
        raise PreconditionError(f"expansion order {order} is too small for weight {weight}")
    slack = comb(len(points), len(k)) * tail / Fraction(rho) ** weight
    return IdentityResult("expansion", series, direct, slack=slack)
