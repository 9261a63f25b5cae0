"""Depth reduction: isolate ((-1)^|k| - (-1)^r) zeta(k) from the stuffle parity identity.

For a target k' of depth r' take q = k'_r' and k = rev(k'[:-1]). The T^0 coefficient of
the stuffle identity at (k, q) is then a rational combination of

    zeta(2k) * zeta(w_1) * ... * zeta(w_t)

in which zeta(k') occurs once from the star block and once from the reflected block;
every other monomial is a product or has depth below r'. Kernel constants zeta(2k)
stay separate symbols (zeta(0) = -1/2 is applied), so depth-1 targets are covered too.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from core.config import settings
from core.errors import AdmissibilityError, InternalError, NoCertificateError, ParameterError
from core.indices import MultiIndex
from core.models import ResidualReport
from core.numeric.bounded import Bounded
from core.numeric.mzv import ZETA_ZERO, even_zeta, zeta
from core.parity.reports import build_report
from core.series.expansion import binomial_weight, neg_binomial, weak_compositions
from core.words.algebra import star_expansion
from core.words.decompose import stuffle_decompose
from core.words.encoding import stuffle_word

logger = logging.getLogger(__name__)

CERTIFICATE_TOLERANCE = 1e-9

Monomial = tuple[int, tuple[tuple[int, ...], ...]]


def _sign(power: int) -> int:
    return -1 if power % 2 else 1


def _monomial(two_k: int, *indices: Sequence[int]) -> tuple[Monomial, Fraction]:
    """Key for zeta(2k) * prod zeta(index); zeta(0) is folded into the returned factor."""
    factor = Fraction(1)
    if two_k == 0:
        factor = ZETA_ZERO
    parts = tuple(sorted(tuple(index) for index in indices if len(index) > 0))
    return (two_k, parts), factor


class _Combination:
    def __init__(self):
        self.terms: dict[Monomial, Fraction] = defaultdict(Fraction)

    def add(self, coeff: Fraction, two_k: Optional[int], *indices: Sequence[int]) -> None:
        """two_k=None means no kernel constant."""
        if two_k is None:
            key = (0, tuple(sorted(tuple(i) for i in indices if len(i) > 0)))
            self.terms[key] += coeff
            return
        key, factor = _monomial(two_k, *indices)
        self.terms[key] += coeff * factor

    def cleaned(self) -> dict[Monomial, Fraction]:
        return {key: c for key, c in sorted(self.terms.items()) if c}


def _regularized_constant(index: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """T^0 coefficient of reg_stuffle(index) as {admissible index: coefficient}."""
    out: dict[tuple[int, ...], Fraction] = {}
    for power, poly in stuffle_decompose(stuffle_word(index)):
        if power != 0:
            continue
        for word, coeff in poly.items():
            out[tuple(letter[0] for letter in word)] = coeff
    return out


def _star_terms(index: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    return {
        tuple(letter[0] for letter in word): coeff
        for word, coeff in star_expansion(stuffle_word(index)).items()
    }


def identity_constant_term(k: MultiIndex, q: int) -> dict[Monomial, Fraction]:
    """Symbolic T^0 coefficient of the four stuffle blocks at (k, q)."""
    r = len(k)
    combination = _Combination()

    for j in range(r + 1):
        head = tuple(reversed(k[:j])) + (q,)
        tail = _regularized_constant(k[j:])
        for word, c in tail.items():
            for star_word, cs in _star_terms(head).items():
                combination.add(_sign(j) * c * cs, None, star_word, word)
            combination.add(_sign(q + sum(k[:j])) * c, None, head, word)

    for two_k in range(0, q + 1, 2):
        for nu in weak_compositions(q - two_k, r):
            weight = binomial_weight(k, nu)
            for word, c in _regularized_constant(k.shifted(nu)).items():
                combination.add(-2 * weight * c, two_k, word)

    for j in range(1, r + 1):
        others = k[: j - 1] + k[j:]
        sign = _sign(q + sum(k[: j - 1]))
        for two_k in range(0, k[j - 1] + 1, 2):
            for nu in weak_compositions(k[j - 1] - two_k, r):
                weight = neg_binomial(q, nu[j - 1]) * binomial_weight(others, nu[: j - 1] + nu[j:])
                weight *= _sign(sum(nu[:j]))
                shifted = k.shifted(nu)
                head = tuple(reversed(shifted[: j - 1])) + (q + nu[j - 1],)
                for word, c in _regularized_constant(shifted[j:]).items():
                    combination.add(-2 * sign * weight * c, two_k, head, word)

    return combination.cleaned()


def monomial_value(key: Monomial, eps: Optional[float] = None) -> Bounded:
    two_k, indices = key
    value = even_zeta(two_k) if two_k > 0 else Bounded.one()
    for index in indices:
        value = value * zeta(index, eps)
    return value


def render_monomial(key: Monomial) -> str:
    two_k, indices = key
    factors = [f"ζ({two_k})"] if two_k > 0 else []
    factors += [f"ζ({','.join(map(str, index))})" for index in indices]
    return "·".join(factors) or "1"


@dataclass
class DepthCertificate:
    """zeta(target) = sum of terms (each a product or of lower depth)."""

    target: MultiIndex
    q: int
    prefactor: int
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    @property
    def is_lower_depth(self) -> bool:
        depth = len(self.target)
        for (two_k, indices), _ in self.terms.items():
            single = two_k == 0 and len(indices) == 1
            if single and len(indices[0]) >= depth:
                return False
        return True

    def render(self) -> str:
        pieces = []
        for key, c in self.terms.items():
            sign = "-" if c < 0 else "+"
            pieces.append(f"{sign} {abs(c)}·{render_monomial(key)}")
        body = " ".join(pieces).lstrip("+ ") or "0"
        return f"ζ({self.target}) = {body}"

    def value(self, eps: Optional[float] = None) -> Bounded:
        total = Bounded.zero()
        for key, c in self.terms.items():
            total = total + monomial_value(key, eps) * c
        return total


def depth_reduction_certificate(
    k: Sequence[int], q: Optional[int] = None, eps: Optional[float] = None
) -> tuple[DepthCertificate, ResidualReport]:
    """Certificate for an admissible target with |k| and depth of opposite parity."""
    target = MultiIndex(k)
    if not target:
        raise ParameterError("the empty index has no depth reduction")
    if not target.is_admissible:
        raise AdmissibilityError(f"zeta({target}) diverges; depth reduction needs an admissible index")
    forced = target[-1]
    requested = q if q is not None else settings.certificate_q
    if requested is not None and requested != forced:
        raise ParameterError(f"the certificate for {target} uses q = {forced} (its last part), not {requested}")
    depth = len(target)
    prefactor = _sign(target.weight) - _sign(depth)
    if prefactor == 0:
        raise NoCertificateError(f"weight {target.weight} and depth {depth} have equal parity; no reduction")

    inner = target[:-1].reverse()
    constant = identity_constant_term(inner, forced)
    target_key: Monomial = (0, (tuple(target),))
    coefficient = constant.pop(target_key, Fraction(0))
    if coefficient != prefactor:
        raise InternalError(f"coefficient of zeta({target}) is {coefficient}, expected {prefactor}")
    terms = {key: -c / prefactor for key, c in constant.items()}
    certificate = DepthCertificate(target=target, q=forced, prefactor=prefactor, terms=terms)

    eps = settings.default_eps if eps is None else eps
    direct = zeta(target, eps)
    combined = certificate.value(eps)
    residual = direct - combined
    report = build_report(
        "depth-certificate",
        {"k": str(target), "q": forced},
        {"zeta": direct, "certificate": combined, "prefactor": prefactor, "terms": len(terms)},
        residual,
        CERTIFICATE_TOLERANCE,
        detail=certificate.render(),
        passed=None if certificate.is_lower_depth else False,
    )
    logger.info("%s: %d terms, residual %s", report.key, len(terms), report.residual)
    return certificate, report
