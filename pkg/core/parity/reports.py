"""Rendering of intermediate values into ResidualReport blocks."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Optional

from mpmath import mp, mpf

from core.hurwitz.cyclotomic import CyclotomicNumber
from core.models import ResidualReport
from core.numeric.bounded import Bounded, RegPoly

REGPOLY_PROBES = (0, 1, -2)


def render_value(value) -> str:
    if isinstance(value, (Bounded, RegPoly)):
        return value.render()
    if isinstance(value, CyclotomicNumber):
        collapsed = value.collapse()
        return str(collapsed) if isinstance(collapsed, Fraction) else collapsed.render()
    if isinstance(value, (mpf,)):
        return mp.nstr(value, 15)
    return str(value)


def instance_key(theorem: str, params: Mapping[str, Any]) -> str:
    """Deterministic key; parameters are rendered in sorted order."""
    body = ";".join(f"{name}={params[name]}" for name in sorted(params))
    return f"{theorem}[{body}]"


def as_float(value) -> float:
    return float(mpf(value))


def residual_magnitude(residual) -> mpf:
    """Largest |midpoint| over the residual (each T-coefficient for polynomials)."""
    if isinstance(residual, RegPoly):
        return max((abs(c.mid) for c in residual.coeffs), default=mpf(0))
    return abs(Bounded.coerce(residual).mid)


def residual_radius(residual) -> mpf:
    if isinstance(residual, RegPoly):
        return residual.max_radius()
    return Bounded.coerce(residual).rad


def residual_lines(residual) -> list[str]:
    if isinstance(residual, RegPoly):
        return [c.render() for c in residual.coeffs] or ["0"]
    return [render_value(residual)]


def pointwise_blocks(residual: RegPoly) -> dict[str, str]:
    """Residual evaluated at the probe values of T, as a cross-check of the coefficients."""
    return {f"residual@T={t}": residual.evaluate(Bounded.from_fraction(t)).render() for t in REGPOLY_PROBES}


def build_report(
    theorem: str,
    params: Mapping[str, Any],
    blocks: Mapping[str, Any],
    residual,
    allowance,
    *,
    limit_gap=None,
    detail: Optional[str] = None,
    passed: Optional[bool] = None,
) -> ResidualReport:
    """Assemble a report; pass means |residual| <= allowance + its own rounding radius."""
    magnitude = residual_magnitude(residual)
    total_allowance = mpf(allowance) + residual_radius(residual)
    verdict = bool(magnitude <= total_allowance) if passed is None else passed
    rendered = {name: render_value(value) for name, value in blocks.items()}
    if isinstance(residual, RegPoly):
        rendered.update(pointwise_blocks(residual))
    return ResidualReport(
        key=instance_key(theorem, params),
        theorem=theorem,
        params=dict(params),
        blocks=rendered,
        residual=residual_lines(residual),
        residual_magnitude=as_float(magnitude),
        allowance=as_float(total_allowance),
        passed=verdict,
        limit_gap=None if limit_gap is None else as_float(limit_gap),
        precision=mp.dps,
        detail=detail,
    )


def exact_report(theorem: str, params: Mapping[str, Any], lhs, rhs, holds: bool, slack=0) -> ResidualReport:
    """Report for an identity decided in exact arithmetic; slack is zero unless a series was truncated."""
    return build_report(
        theorem,
        params,
        {"lhs": lhs, "rhs": rhs},
        lhs - rhs,
        float(slack),
        passed=holds,
    )


def error_report(theorem: str, params: Mapping[str, Any], exc: Exception) -> ResidualReport:
    return ResidualReport(
        key=instance_key(theorem, params),
        theorem=theorem,
        params=dict(params),
        passed=False,
        precision=mp.dps,
        detail=f"{type(exc).__name__}: {exc}",
    )
