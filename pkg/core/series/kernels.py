"""Laurent expansions of the kernels pi cot(pi s) and pi / sin(pi s) at an integer n.

    pi cot(pi s)  = -2 sum_{k>=0} zeta(2k) (s-n)^(2k-1)
    pi / sin(pi s) = 2 (-1)^n sum_{k>=0} zeta_bar(2k) (s-n)^(2k-1)

with zeta(0) = -1/2 and zeta_bar(0) = 1/2, so both start with (s-n)^(-1) times
1 and (-1)^n. Coefficients are kept symbolic as (scale, 2k) so the residue
computations stay exact until the very end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from mpmath import mp, mpf

from core.numeric.bounded import Bounded
from core.numeric.mzv import alt_zeta, even_zeta

KernelKind = Literal["cot", "csc"]
KERNELS: tuple[str, ...] = ("cot", "csc")


def kernel_constant(kind: KernelKind, two_k: int) -> Bounded:
    """zeta(2k) for the cotangent kernel, zeta_bar(2k) for the cosecant kernel."""
    if kind == "cot":
        return even_zeta(two_k)
    return alt_zeta(two_k)


def kernel_scale(kind: KernelKind, center: int) -> Fraction:
    if kind == "cot":
        return Fraction(-2)
    return Fraction(2 if center % 2 == 0 else -2)


@dataclass(frozen=True)
class KernelExpansion:
    kind: KernelKind
    center: int
    terms: int

    @property
    def scale(self) -> Fraction:
        return kernel_scale(self.kind, self.center)

    def symbolic(self) -> list[tuple[int, Fraction, int]]:
        """(power 2k-1, scale, 2k) for k = 0..terms-1."""
        return [(2 * k - 1, self.scale, 2 * k) for k in range(self.terms)]

    def coefficient(self, power: int) -> Bounded:
        if power < -1 or power % 2 == 0 or (power + 1) // 2 >= self.terms:
            return Bounded.zero()
        return kernel_constant(self.kind, power + 1) * self.scale

    def leading_coefficient(self) -> Fraction:
        """Exact residue of the kernel itself: 1 for cot, (-1)^n for csc."""
        zero_value = Fraction(-1, 2) if self.kind == "cot" else Fraction(1, 2)
        return self.scale * zero_value

    def evaluate(self, s) -> Bounded:
        t = mpf(s) - self.center
        total = Bounded.zero()
        for power, scale, two_k in self.symbolic():
            total = total + kernel_constant(self.kind, two_k) * scale * Bounded(t**power)
        return total

    def truncation_bound(self, s) -> mpf:
        """Bound on the omitted terms; |zeta(2k)| <= zeta(2) and |zeta_bar(2k)| <= 1."""
        t = abs(mpf(s) - self.center)
        if t >= 1:
            return mp.inf
        power = 2 * self.terms - 1
        return 2 * mp.zeta(2) * t**power / (1 - t * t)

    def closed_form(self, s) -> mpf:
        s = mpf(s)
        if self.kind == "cot":
            return mp.pi * mp.cot(mp.pi * s)
        return mp.pi / mp.sin(mp.pi * s)


def kernel_expand(kind: KernelKind, center: int, terms: int = 40) -> KernelExpansion:
    if kind not in KERNELS:
        raise ValueError(f"unknown kernel {kind!r}; expected one of {KERNELS}")
    if terms < 1:
        raise ValueError("a kernel expansion needs at least one term")
    return KernelExpansion(kind=kind, center=center, terms=terms)
