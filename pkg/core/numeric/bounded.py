"""Error-bounded high-precision values and polynomials in the regularization variable T."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from mpmath import mp, mpc, mpf

Number = Union[int, Fraction, "Bounded"]


def _ulp(value) -> mpf:
    """One unit of rounding at the working precision, relative to |value|."""
    return abs(value) * mpf(2) ** (1 - mp.prec)


def fraction_to_mpf(value: Fraction) -> mpf:
    return mpf(value.numerator) / value.denominator


class Bounded:
    """A value `mid` with absolute error at most `rad`.

    When the value is known to be an exact rational, `exact` holds it and is carried
    through +, - and * with other exact operands.
    """

    __slots__ = ("mid", "rad", "exact")

    def __init__(self, mid, rad=0, exact: Optional[Fraction] = None):
        if isinstance(mid, (mpf, mpc)):
            self.mid = mid
        elif isinstance(mid, complex):
            self.mid = mpc(mid)
        else:
            self.mid = mpf(mid)
        self.rad = mpf(rad)
        if self.rad < 0:
            raise ValueError(f"error radius must be nonnegative, got {rad}")
        self.exact = exact

    @classmethod
    def from_fraction(cls, value: Union[int, Fraction]) -> "Bounded":
        value = Fraction(value)
        mid = fraction_to_mpf(value)
        return cls(mid, _ulp(mid), exact=value)

    @classmethod
    def zero(cls) -> "Bounded":
        return cls.from_fraction(0)

    @classmethod
    def one(cls) -> "Bounded":
        return cls.from_fraction(1)

    @staticmethod
    def coerce(value) -> "Bounded":
        if isinstance(value, Bounded):
            return value
        if isinstance(value, (int, Fraction)):
            return Bounded.from_fraction(value)
        if isinstance(value, (mpf, mpc, float, complex)):
            return Bounded(value, _ulp(value))
        to_bounded = getattr(value, "to_bounded", None)
        if to_bounded is not None:
            return to_bounded()
        raise TypeError(f"cannot use {type(value).__name__} as a bounded value")

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def is_real(self) -> bool:
        return isinstance(self.mid, mpf)

    def upper(self) -> mpf:
        """Upper bound for |value|."""
        return abs(self.mid) + self.rad

    def real(self) -> "Bounded":
        if self.is_real:
            return self
        return Bounded(self.mid.real, self.rad, self.exact)

    def contains(self, value, slack=0) -> bool:
        other = Bounded.coerce(value)
        return abs(self.mid - other.mid) <= self.rad + other.rad + mpf(slack)

    def widened(self, extra) -> "Bounded":
        return Bounded(self.mid, self.rad + mpf(extra))

    def __add__(self, other) -> "Bounded":
        try:
            other = Bounded.coerce(other)
        except TypeError:
            return NotImplemented
        mid = self.mid + other.mid
        exact = self.exact + other.exact if self.is_exact and other.is_exact else None
        return Bounded(mid, self.rad + other.rad + _ulp(mid), exact)

    __radd__ = __add__

    def __neg__(self) -> "Bounded":
        return Bounded(-self.mid, self.rad, -self.exact if self.is_exact else None)

    def __sub__(self, other) -> "Bounded":
        try:
            other = Bounded.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Bounded":
        return (-self) + other

    def __mul__(self, other) -> "Bounded":
        try:
            other = Bounded.coerce(other)
        except TypeError:
            return NotImplemented
        mid = self.mid * other.mid
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad + _ulp(mid)
        exact = self.exact * other.exact if self.is_exact and other.is_exact else None
        return Bounded(mid, rad, exact)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Bounded":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "Bounded":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Bounded.one()
        for _ in range(exponent):
            result = result * self
        return result

    def render(self, digits: int = 15) -> str:
        if self.is_exact:
            return str(self.exact)
        return f"{mp.nstr(self.mid, digits)}±{mp.nstr(self.rad, 2)}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Bounded({self.render()})"


def bounded_sum(values: Iterable) -> Bounded:
    total = Bounded.zero()
    for value in values:
        total = total + value
    return total


class RegPoly:
    """Polynomial sum_i c_i T^i with error-bounded coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        values = [Bounded.coerce(c) for c in coeffs]
        while values and values[-1].is_exact and values[-1].exact == 0:
            values.pop()
        self.coeffs: tuple[Bounded, ...] = tuple(values)

    @classmethod
    def constant(cls, value) -> "RegPoly":
        return cls([value])

    @classmethod
    def monomial(cls, value, degree: int) -> "RegPoly":
        return cls([0] * degree + [value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Bounded:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Bounded.zero()

    def _binary(self, other: "RegPoly", sign: int) -> "RegPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return RegPoly(
            [self.coefficient(i) + other.coefficient(i) * sign for i in range(size)]
        )

    def __add__(self, other) -> "RegPoly":
        if not isinstance(other, RegPoly):
            other = RegPoly.constant(other)
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "RegPoly":
        if not isinstance(other, RegPoly):
            other = RegPoly.constant(other)
        return self._binary(other, -1)

    def __neg__(self) -> "RegPoly":
        return RegPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "RegPoly":
        if isinstance(other, RegPoly):
            if not self.coeffs or not other.coeffs:
                return RegPoly()
            out = [Bounded.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return RegPoly(out)
        return RegPoly([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def evaluate(self, t) -> Bounded:
        result = Bounded.zero()
        for c in reversed(self.coeffs):
            result = result * t + c
        return result

    def max_magnitude(self) -> mpf:
        return max((c.upper() for c in self.coeffs), default=mpf(0))

    def max_radius(self) -> mpf:
        return max((c.rad for c in self.coeffs), default=mpf(0))

    def render(self, digits: int = 12) -> str:
        parts: list[str] = []
        for degree in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[degree]
            if c.is_exact and c.exact == 0:
                continue
            negative = (c.exact < 0) if c.is_exact else (c.is_real and c.mid < 0)
            magnitude = -c if negative else c
            text = magnitude.render(digits)
            power = "" if degree == 0 else ("T" if degree == 1 else f"T^{degree}")
            if power:
                if magnitude.is_exact and magnitude.exact == 1:
                    text = power
                elif magnitude.is_exact and magnitude.exact.denominator == 1:
                    text = f"{text}·{power}"
                else:
                    text = f"({text})·{power}"
            if not parts:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f" - {text}" if negative else f" + {text}")
        return "".join(parts) or "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RegPoly({self.render()})"
