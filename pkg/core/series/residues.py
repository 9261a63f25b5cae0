"""Residues of kernel(s) * zeta_iv(k; s) / s^q at integer points.

A residue is a finite combination sum_{2k} c_(2k) K(2k) of the kernel constants
(zeta(2k) for cot, zeta_bar(2k) for csc) with exact coefficients. It is obtained by
multiplying the Laurent/Taylor expansion of the finite zeta function with the
expansion of 1/s^q and reading off the coefficients against the kernel terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from core.indices import ColorVector, MultiIndex
from core.models import IntervalSpec
from core.numeric.bounded import Bounded
from core.series.expansion import expansion_at, neg_binomial
from core.series.kernels import KernelKind, kernel_constant, kernel_scale


def inverse_power_expand(q: int, center: int, order: int) -> list[Fraction]:
    """Taylor coefficients of 1/s^q at center != 0: binom(-q, p) / center^(q+p)."""
    if center == 0:
        raise ValueError("1/s^q has no Taylor expansion at 0")
    return [Fraction(neg_binomial(q, p)) / Fraction(center) ** (q + p) for p in range(order + 1)]


@dataclass
class ResidueForm:
    kind: KernelKind
    center: int
    coefficients: dict[int, object] = field(default_factory=dict)

    def folded(self) -> tuple[object, dict[int, object]]:
        """(exact constant, remaining 2k >= 2 coefficients) with the 2k = 0 constant applied."""
        zero_value = Fraction(-1, 2) if self.kind == "cot" else Fraction(1, 2)
        constant = self.coefficients.get(0, Fraction(0)) * zero_value
        return constant, {two_k: c for two_k, c in self.coefficients.items() if two_k > 0}

    def value(self) -> Bounded:
        total = Bounded.zero()
        for two_k, coeff in self.coefficients.items():
            total = total + kernel_constant(self.kind, two_k) * coeff
        return total


def residue_at(
    kind: KernelKind,
    q: int,
    k: Sequence[int],
    iv: IntervalSpec,
    n: int,
    colors: Optional[ColorVector] = None,
) -> ResidueForm:
    """Residue at s = n of kernel(s) * zeta_iv(k; s) * s^(-q)."""
    k = MultiIndex(k)
    inner_pole = q if n == 0 else 0
    series = expansion_at(k, iv, n, inner_pole, colors)
    principal = series.principal_order
    total_pole = principal + inner_pole

    def product_coefficient(power: int):
        if n == 0:
            return series.coefficient(power + q)
        weights = inverse_power_expand(q, n, power + principal)
        total = Fraction(0)
        for i in range(-principal, 1):
            p = power - i
            if 0 <= p < len(weights):
                total = total + series.coefficient(i) * weights[p]
        return total

    scale = kernel_scale(kind, n)
    coefficients = {}
    for two_k in range(0, total_pole + 1, 2):
        coeff = product_coefficient(-two_k)
        coefficients[two_k] = coeff * scale
    return ResidueForm(kind=kind, center=n, coefficients=coefficients)
