"""Exact elements of Q(zeta_N) stored as rational coordinates on the powers of zeta_N."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from mpmath import mp, mpf

from core.errors import LevelError
from core.numeric.bounded import Bounded, fraction_to_mpf
from core.numeric.mzv import root_of_unity


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Division of coefficient lists (lowest degree first)."""
    num = list(num)
    quotient = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quotient[shift] = factor
        for i, c in enumerate(den):
            num[i + shift] -= factor * c
        num.pop()
    return quotient, num


@lru_cache(maxsize=64)
def cyclotomic_polynomial(level: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    poly = [Fraction(-1)] + [Fraction(0)] * (level - 1) + [Fraction(1)]
    for d in range(1, level):
        if level % d == 0:
            poly, remainder = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if any(remainder):
                raise ArithmeticError(f"Phi_{d} does not divide x^{level}-1")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class CyclotomicNumber:
    """sum_e c_e zeta_N^e with rational c_e; N <= 2 values are plain rationals."""

    __slots__ = ("level", "coords")

    def __init__(self, level: int, coords: Sequence[Fraction] = ()):
        if level < 1:
            raise LevelError(f"level must be positive, got {level}")
        values = [Fraction(0)] * level
        for e, c in enumerate(coords):
            values[e % level] += Fraction(c)
        self.level = level
        self.coords = tuple(values)

    @classmethod
    def rational(cls, level: int, value: Union[int, Fraction]) -> "CyclotomicNumber":
        return cls(level, [Fraction(value)])

    @classmethod
    def monomial(cls, level: int, exponent: int, value: Union[int, Fraction] = 1) -> "CyclotomicNumber":
        coords = [Fraction(0)] * level
        coords[exponent % level] = Fraction(value)
        return cls(level, coords)

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.level != self.level:
                raise LevelError(f"cannot combine levels {self.level} and {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.level, other)
        raise TypeError

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(self.level, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.level, [-a for a in self.coords])

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.level, [a * other for a in self.coords])
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = [Fraction(0)] * self.level
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        out[(i + j) % self.level] += a * b
        return CyclotomicNumber(self.level, out)

    __rmul__ = __mul__

    def times_monomial(self, exponent: int, value: Fraction) -> "CyclotomicNumber":
        """self * value * zeta_N^exponent without a full convolution."""
        n = self.level
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coords):
            if a:
                out[(i + exponent) % n] = a * value
        return CyclotomicNumber(n, out)

    def conjugate(self) -> "CyclotomicNumber":
        n = self.level
        return CyclotomicNumber(n, [self.coords[(-e) % n] for e in range(n)])

    def reduced(self) -> tuple[Fraction, ...]:
        """Canonical coordinates modulo Phi_N (the representation is unique there)."""
        poly = list(self.coords)
        _, remainder = _poly_divmod(poly, list(cyclotomic_polynomial(self.level)))
        while remainder and remainder[-1] == 0:
            remainder.pop()
        return tuple(remainder)

    def is_zero(self) -> bool:
        return not self.reduced()

    def rational_value(self) -> Fraction | None:
        """The value as a rational when it is one."""
        reduced = self.reduced()
        if not reduced:
            return Fraction(0)
        if len(reduced) == 1:
            return reduced[0]
        return None

    def to_complex(self):
        total = mpf(0)
        for e, c in enumerate(self.coords):
            if c:
                total += fraction_to_mpf(c) * root_of_unity(self.level, e)
        return total

    def to_bounded(self) -> Bounded:
        value = self.to_complex()
        terms = sum(1 for c in self.coords if c)
        rad = (abs(value) + sum(abs(fraction_to_mpf(c)) for c in self.coords)) * mpf(2) ** (4 - mp.prec) * (terms + 1)
        return Bounded(value, rad, exact=self.rational_value())

    def collapse(self) -> Union[Fraction, Bounded]:
        """Levels 1 and 2 give an exact rational; higher levels an error-bounded complex."""
        if self.level <= 2:
            return self.rational_value()
        return self.to_bounded()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, LevelError):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.level, self.reduced()))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{e}" for e, c in enumerate(self.coords) if c]
        return f"CyclotomicNumber(N={self.level}: {' + '.join(terms) or '0'})"
