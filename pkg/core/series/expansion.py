"""Taylor and Laurent expansions of zeta_(m1,m2)(k; s) in s - n at an integer center n.

If -n is not a lattice point of the window, the expansion is Taylor:

    c_m = (mu_1...mu_r)^(-n) sum_{|nu|=m} prod binom(-k_l, nu_l) Li_(m1+n,m2+n)(k+nu; mu)

Otherwise the translated window contains 0 and the chains either skip 0 or put
the j-th point on it, which gives a regular part a_m and principal parts b_(m,j)
attached to (s - n)^(m - k_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Optional, Sequence

from core.errors import UnsupportedWindowError
from core.hurwitz.cyclotomic import CyclotomicNumber
from core.hurwitz.finite import semi_infinite_value, window_value
from core.indices import ColorVector, MultiIndex, check_colors
from core.models import IntervalSpec


def neg_binomial(k: int, n: int) -> int:
    """binom(-k, n) = (-1)^n binom(k + n - 1, n)."""
    value = comb(k + n - 1, n)
    return -value if n % 2 else value


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in weak_compositions(total - head, parts - 1):
            yield (head,) + rest


def binomial_weight(k: Sequence[int], nu: Sequence[int]) -> int:
    """prod_l binom(-k_l, nu_l)."""
    weight = 1
    for part, offset in zip(k, nu):
        weight *= neg_binomial(part, offset)
    return weight


def _shift(value: Optional[int], n: int) -> Optional[int]:
    return None if value is None else value + n


def _piece(
    k: Sequence[int],
    lo: Optional[int],
    hi: Optional[int],
    closed: bool,
    colors: Optional[ColorVector],
):
    """zeta over (lo, hi) / (lo, hi] at s = 0: exact when finite, error-bounded otherwise."""
    if lo is not None and hi is not None:
        return window_value(k, lo, hi, closed=closed, colors=colors)
    if colors is not None and colors.level > 1:
        raise UnsupportedWindowError("colored expansions need a finite window")
    return semi_infinite_value(k, IntervalSpec(m1=lo, m2=hi, right_closed=closed))


def is_pole(iv: IntervalSpec, n: int) -> bool:
    """True when zeta_iv(k; s) can have a pole at s = n, i.e. -n is a lattice point."""
    point = -n
    if iv.m1 is not None and point <= iv.m1:
        return False
    if iv.m2 is not None and point > iv.last_point:
        return False
    return True


def _prefactor(colors: Optional[ColorVector], n: int) -> Optional[CyclotomicNumber]:
    if colors is None or colors.level == 1:
        return None
    return CyclotomicNumber.monomial(colors.level, -n * colors.product_exponent())


def _colors_slice(colors: Optional[ColorVector], start: int, stop: int) -> Optional[ColorVector]:
    if colors is None or colors.level == 1:
        return None
    return ColorVector(level=colors.level, exponents=colors.exponents[start:stop])


@dataclass
class LaurentSeries:
    """prefactor * (sum_m a_m t^m + sum_j sum_m b_(m,j) t^(m - k_j)) with t = s - center."""

    center: int
    order: int
    regular: list
    singular: dict[int, list] = field(default_factory=dict)
    pole_orders: dict[int, int] = field(default_factory=dict)
    prefactor: Optional[CyclotomicNumber] = None

    @property
    def principal_order(self) -> int:
        return max(self.pole_orders.values(), default=0)

    @property
    def is_taylor(self) -> bool:
        return not self.singular

    def _scaled(self, value):
        return value if self.prefactor is None else self.prefactor * value

    def coefficient(self, power: int):
        """Coefficient of (s - center)^power, valid for power <= order."""
        if power > self.order:
            raise ValueError(f"coefficient {power} is beyond the expansion order {self.order}")
        total = self.regular[power] if 0 <= power < len(self.regular) else Fraction(0)
        for j, values in self.singular.items():
            m = power + self.pole_orders[j]
            if 0 <= m < len(values):
                total = total + values[m]
        return self._scaled(total)

    def evaluate(self, s):
        """Truncated series value at s."""
        t = s - self.center
        total = Fraction(0)
        for power in range(-self.principal_order, self.order + 1):
            total = total + self.coefficient(power) * t**power
        return total


def taylor_at(
    k: Sequence[int],
    iv: IntervalSpec,
    n: int,
    order: int,
    colors: Optional[ColorVector] = None,
) -> list:
    """Taylor coefficients c_0..c_order at a center where zeta_iv(k; s) is analytic."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if k and is_pole(iv, n):
        raise ValueError(f"s = {n} is a pole of zeta_{iv}({k}; s); use laurent_at")
    lo, hi = _shift(iv.m1, n), _shift(iv.m2, n)
    prefactor = _prefactor(colors, n)
    coefficients = []
    for m in range(order + 1):
        total = Fraction(0)
        for nu in weak_compositions(m, len(k)):
            weight = binomial_weight(k, nu)
            total = total + _piece(k.shifted(nu), lo, hi, iv.right_closed, colors) * weight
        coefficients.append(total if prefactor is None else prefactor * total)
    return coefficients


def laurent_at(
    k: Sequence[int],
    iv: IntervalSpec,
    n: int,
    order: int,
    colors: Optional[ColorVector] = None,
) -> LaurentSeries:
    """Laurent expansion at a pole n; principal parts are kept up to order + k_j."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if not is_pole(iv, n):
        raise ValueError(f"s = {n} is not a pole of zeta_{iv}({k}; s); use taylor_at")
    lo, hi = _shift(iv.m1, n), _shift(iv.m2, n)
    r = len(k)

    regular = []
    for m in range(order + 1):
        total = Fraction(0)
        for nu in weak_compositions(m, r):
            shifted = k.shifted(nu)
            weight = binomial_weight(k, nu)
            for j in range(r + 1):
                head = _piece(shifted[:j], lo, 0, False, _colors_slice(colors, 0, j))
                tail = _piece(shifted[j:], 0, hi, iv.right_closed, _colors_slice(colors, j, r))
                total = total + head * tail * weight
        regular.append(total)

    singular: dict[int, list] = {}
    pole_orders: dict[int, int] = {}
    for j in range(1, r + 1):
        others = k[: j - 1] + k[j:]
        values = []
        for m in range(order + k[j - 1] + 1):
            total = Fraction(0)
            for nu in weak_compositions(m, r - 1):
                shifted = others.shifted(nu)
                weight = binomial_weight(others, nu)
                head = _piece(shifted[: j - 1], lo, 0, False, _colors_slice(colors, 0, j - 1))
                tail = _piece(shifted[j - 1:], 0, hi, iv.right_closed, _colors_slice(colors, j, r))
                total = total + head * tail * weight
            values.append(total)
        singular[j] = values
        pole_orders[j] = k[j - 1]

    return LaurentSeries(
        center=n,
        order=order,
        regular=regular,
        singular=singular,
        pole_orders=pole_orders,
        prefactor=_prefactor(colors, n),
    )


def expansion_at(
    k: Sequence[int],
    iv: IntervalSpec,
    n: int,
    order: int,
    colors: Optional[ColorVector] = None,
) -> LaurentSeries:
    """Taylor or Laurent expansion at n, as a LaurentSeries either way."""
    if k and is_pole(iv, n):
        return laurent_at(k, iv, n, order, colors)
    return LaurentSeries(center=n, order=order, regular=taylor_at(k, iv, n, order, colors))
