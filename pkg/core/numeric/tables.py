"""Long truncated sums in working-precision floating point, with rounding bounds.

Exact rational sums become impractical past a few thousand points; these helpers
run the same prefix recursion in mpf. All terms of an uncolored sum over positive
points are positive, so the rounding error is relative and grows linearly with
the number of operations.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Sequence

from mpmath import mp, mpf

from core.errors import PoleError
from core.indices import MultiIndex
from core.numeric.bounded import Bounded


def rounding_radius(value, operations: int) -> mpf:
    return (abs(value) + 1) * operations * mpf(2) ** (2 - mp.prec)


@lru_cache(maxsize=16)
def _running_sums(index: tuple[int, ...], count: int, star: bool, dps: int) -> tuple:
    r = len(index)
    sums = [mpf(1)] + [mpf(0)] * r
    out = [sums[r]]
    order = range(1, r + 1) if star else range(r, 0, -1)
    for point in range(1, count + 1):
        inverse = mpf(1) / point
        powers = {}
        for j in order:
            exponent = index[j - 1]
            if exponent not in powers:
                powers[exponent] = inverse**exponent
            sums[j] += sums[j - 1] * powers[exponent]
        out.append(sums[r])
    return tuple(out)


def running_sums(index: Sequence[int], count: int, star: bool = False) -> tuple:
    """values[n] = zeta_(0,n](index) (or its star version) for n = 0..count."""
    return _running_sums(tuple(MultiIndex(index)), count, star, mp.dps)


def running_radius(value, n: int, depth: int) -> mpf:
    return rounding_radius(value, 3 * (depth + 1) * (n + 1))


def truncated_zeta_mp(k: Sequence[int], m: int) -> Bounded:
    """zeta_(0,M)(k) in floating point."""
    k = MultiIndex(k)
    if m <= 1:
        return Bounded.from_fraction(1 if not k else 0)
    value = running_sums(k, m - 1)[m - 1]
    return Bounded(value, running_radius(value, m, len(k)))


def harmonic(n: int) -> Bounded:
    """H_n = 1 + 1/2 + ... + 1/n."""
    if n <= 0:
        return Bounded.zero()
    value = running_sums((1,), n)[n]
    return Bounded(value, running_radius(value, n, 1))


class PowerTable:
    """Memoized p^(-e) for integer points p != 0."""

    def __init__(self):
        self._values: dict[tuple[int, int], mpf] = {}

    def get(self, point: int, exponent: int) -> mpf:
        key = (point, exponent)
        value = self._values.get(key)
        if value is None:
            if point == 0:
                raise PoleError("term 1/0 in a floating point window sum")
            value = mpf(point) ** (-exponent)
            self._values[key] = value
        return value


def window_sum_mp(k: Sequence[int], lo: int, hi: int, table: PowerTable | None = None) -> Bounded:
    """zeta_(lo,hi)(k) at s = 0 in floating point; the window must avoid 0."""
    k = MultiIndex(k)
    r = len(k)
    table = table or PowerTable()
    sums = [mpf(1)] + [mpf(0)] * r
    magnitude = [mpf(1)] + [mpf(0)] * r
    for point in range(lo + 1, hi):
        for j in range(r, 0, -1):
            term = table.get(point, k[j - 1])
            sums[j] += sums[j - 1] * term
            magnitude[j] += magnitude[j - 1] * abs(term)
    count = max(hi - lo - 1, 0)
    return Bounded(sums[r], rounding_radius(magnitude[r], 3 * (r + 1) * (count + 1)))


def log_power_tail(n: int, power: int, q: int, shift=1) -> mpf:
    """Integral over [N, inf) of (a + ln x)^t x^(-q) dx for q > 1, with a = shift."""
    c = q - 1
    base = mpf(shift) + mp.log(n)
    total = mpf(0)
    for i in range(power + 1):
        total += mpf(factorial(power)) / factorial(power - i) * base ** (power - i) / mpf(c) ** (i + 1)
    return total * mpf(n) ** (-c)


class Accumulator:
    """Floating point sum with an error radius: propagated errors plus rounding of every add."""

    __slots__ = ("mid", "rad", "magnitude", "ops")

    def __init__(self):
        self.mid = mpf(0)
        self.rad = mpf(0)
        self.magnitude = mpf(0)
        self.ops = 0

    def add(self, value, error=0) -> None:
        self.mid += value
        self.magnitude += abs(value)
        self.rad += error
        self.ops += 1

    def result(self) -> Bounded:
        return Bounded(self.mid, self.rad + rounding_radius(self.magnitude, 4 * self.ops + 4))
