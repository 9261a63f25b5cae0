"""Convergent multiple zeta values and colored multiple polylogarithms at roots of unity.

A colored value Li(k; mu) is the iterated integral over [0, 1] of its binary word
(letter 0 is dt/t, letter v >= 1 is dt/(b - t) with b = exp(2 pi i (v-1)/N)). The path
is split at a point z; the piece over [0, z] and the reflected piece over [0, 1 - z]
are power series converging geometrically, so truncating them gives an explicit
error bound.
"""

import logging
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from mpmath import mp, mpf

from core.config import settings
from core.errors import AdmissibilityError, DivergenceError, PrecisionError
from core.indices import ColorVector, MultiIndex, check_colors, colored_admissible
from core.numeric.bounded import Bounded
from core.words.algebra import star_expansion
from core.words.encoding import X0, encode_binary, index_of_stuffle_word, stuffle_word

logger = logging.getLogger(__name__)

MIN_EPS = 1e-15
# Values of the Riemann and alternating zeta functions at 0 used by the kernel expansions.
ZETA_ZERO = Fraction(-1, 2)
ALT_ZETA_ZERO = Fraction(1, 2)


def root_of_unity(level: int, exponent: int):
    """exp(2 pi i e / N) at the working precision; real for N <= 2."""
    exponent %= level
    if exponent == 0:
        return mpf(1)
    if 2 * exponent == level:
        return mpf(-1)
    return mp.expjpi(mpf(2 * exponent) / level)


def set_working_precision(digits: int) -> int:
    """Set the global working precision; memoized values are keyed by it."""
    if digits < 20:
        raise PrecisionError(f"working precision must be at least 20 digits, got {digits}")
    if mp.dps != digits:
        logger.info("Working precision set to %s digits", digits)
        mp.dps = digits
    return mp.dps


@contextmanager
def preserved_precision() -> Iterator[None]:
    """Restore the working precision on exit, whatever the body set it to."""
    saved = mp.prec
    try:
        yield
    finally:
        mp.prec = saved


def _first_half_forms(word: Sequence[int], level: int) -> list:
    return [None if code == X0 else root_of_unity(level, code - 1) for code in word]


def _second_half_forms(word: Sequence[int], level: int) -> tuple[list, list[int]]:
    """Forms of I(z; word; 1) after t -> 1 - t and path reversal, with their signs.

    x0 becomes dt/(1 - t), the letter b = 1 becomes x0 and b != 1 becomes
    -dt/((1 - b) - t). Reversal contributes one sign per letter.
    """
    forms: list = []
    signs: list[int] = []
    for code in reversed(word):
        if code == X0:
            forms.append(mpf(1))
            signs.append(1)
        elif code == 1:
            forms.append(None)
            signs.append(1)
        else:
            forms.append(1 - root_of_unity(level, code - 1))
            signs.append(-1)
    return forms, signs


def _prefix_values(forms: list, point, terms: int) -> list:
    """Values at `point` of the iterated integrals from 0 of every prefix of `forms`."""
    coeffs = [mpf(1)] + [mpf(0)] * terms
    values = [mpf(1)]
    for center in forms:
        out = [mpf(0)] * (terms + 1)
        if center is None:
            for n in range(1, terms + 1):
                out[n] = coeffs[n] / n
        else:
            inverse = 1 / center
            acc = mpf(0)
            for n in range(terms):
                acc = (coeffs[n] + acc) * inverse
                out[n + 1] = acc / (n + 1)
        coeffs = out
        values.append(mp.polyval(coeffs[::-1], point))
    return values


def _compute_word_value(word: tuple[int, ...], level: int, dps: int) -> Bounded:
    m = len(word)
    distances = [abs(1 - root_of_unity(level, code - 1)) for code in word if code >= 2]
    d = min([mpf(1)] + distances)
    z = 1 / (1 + d)
    rho = z
    bound = 1 / (1 - rho)
    target = mpf(10) ** (-(dps - 8))
    tau = target / (4 * (m + 1) * bound)
    terms = int(mp.ceil(mp.log(tau * (1 - rho)) / mp.log(rho)))

    first = _prefix_values(_first_half_forms(word, level), z, terms)
    forms, signs = _second_half_forms(word, level)
    second = _prefix_values(forms, 1 - z, terms)

    sign_prefix = [1]
    for sign in signs:
        sign_prefix.append(sign_prefix[-1] * sign)

    total = mpf(0)
    for j in range(m + 1):
        tail_length = m - j
        total += first[j] * second[tail_length] * sign_prefix[tail_length]

    truncation = (m + 1) * (2 * tau * bound + tau * tau)
    rounding = 8 * (m + 1) ** 2 * (terms + 1) * bound**2 * mpf(2) ** (-mp.prec)
    return Bounded(total, truncation + rounding)


_cached_word_value = lru_cache(maxsize=settings.cache_size)(_compute_word_value)


def _word_cache():
    """The memo for word values, rebuilt when settings.cache_size changes."""
    global _cached_word_value
    if _cached_word_value.cache_parameters()["maxsize"] != settings.cache_size:
        logger.debug("Resizing word value cache to %s entries", settings.cache_size)
        _cached_word_value = lru_cache(maxsize=settings.cache_size)(_compute_word_value)
    return _cached_word_value


def word_value(word: Sequence[int], level: int = 1) -> Bounded:
    """Iterated integral of a convergent binary word of the given level."""
    word = tuple(word)
    if not word:
        return Bounded.one()
    if word[0] == X0:
        raise AdmissibilityError("the iterated integral diverges at 0: the word starts with x0")
    if word[-1] == 1:
        raise DivergenceError("the word ends in the divergent letter")
    return _word_cache()(word, level, mp.dps)


def clear_cache() -> None:
    _word_cache().cache_clear()
    even_zeta.cache_clear()
    _alt_zeta_cached.cache_clear()


def _resolve_eps(eps: Optional[float]) -> float:
    eps = settings.default_eps if eps is None else float(eps)
    if eps < MIN_EPS:
        raise PrecisionError(f"requested error {eps:g} is below the supported floor {MIN_EPS:g}")
    return eps


def _certified(value: Bounded, eps: float, label: str) -> Bounded:
    if value.rad > eps:
        raise PrecisionError(
            f"{label}: error bound {mp.nstr(value.rad, 3)} exceeds {eps:g} at {mp.dps} digits"
        )
    return value


def zeta(k: Sequence[int], eps: Optional[float] = None) -> Bounded:
    """zeta(k_1, ..., k_r) = sum over 0 < n_1 < ... < n_r of prod n_i^(-k_i)."""
    k = MultiIndex(k)
    eps = _resolve_eps(eps)
    if not k.is_admissible:
        raise AdmissibilityError(f"zeta({k}) diverges: the last exponent must exceed 1")
    return _certified(word_value(encode_binary(k)), eps, f"zeta({k})")


def colored_li(k: Sequence[int], colors: Optional[ColorVector], eps: Optional[float] = None) -> Bounded:
    """Li(k; mu) = sum over 0 < n_1 < ... < n_r of prod mu_i^n_i / n_i^k_i."""
    k = MultiIndex(k)
    check_colors(k, colors)
    if colors is None or colors.level == 1:
        return zeta(k, eps)
    eps = _resolve_eps(eps)
    if not colored_admissible(k, colors):
        raise DivergenceError(f"Li({k}; {colors}) diverges: it ends in the pair (1, 1)")
    return _certified(word_value(encode_binary(k, colors), colors.level), eps, f"Li({k}; {colors})")


def colored_li_star(k: Sequence[int], colors: Optional[ColorVector], eps: Optional[float] = None) -> Bounded:
    """Star version (weak inequalities), expanded into strict values by merging neighbours."""
    k = MultiIndex(k)
    check_colors(k, colors)
    level = 1 if colors is None else colors.level
    if not colored_admissible(k, colors):
        raise DivergenceError(f"Li*({k}) diverges: it ends in the pair (1, 1)")
    expansion = star_expansion(stuffle_word(k, colors), level)
    total = Bounded.zero()
    for word, coeff in expansion.items():
        index, merged = index_of_stuffle_word(word, level)
        total = total + colored_li(index, merged if level > 1 else None, eps) * coeff
    return total


def zeta_star(k: Sequence[int], eps: Optional[float] = None) -> Bounded:
    k = MultiIndex(k)
    if not k.is_admissible:
        raise AdmissibilityError(f"zeta*({k}) diverges: the last exponent must exceed 1")
    return colored_li_star(k, None, eps)


@lru_cache(maxsize=256)
def _alt_zeta_cached(s: int, dps: int) -> Bounded:
    if s == 1:
        value = mp.log(2)
    else:
        value = mp.altzeta(s)
    return Bounded(value, abs(value) * mpf(2) ** (4 - mp.prec))


def alt_zeta(s: int, eps: Optional[float] = None) -> Bounded:
    """Alternating zeta sum_{n>=1} (-1)^(n-1) n^(-s); exactly 1/2 at s = 0."""
    if s < 0:
        raise ValueError(f"alternating zeta is only provided for s >= 0, got {s}")
    eps = _resolve_eps(eps)
    if s == 0:
        return Bounded.from_fraction(ALT_ZETA_ZERO)
    return _certified(_alt_zeta_cached(s, mp.dps), eps, f"alt_zeta({s})")


@lru_cache(maxsize=256)
def _even_zeta(two_k: int, dps: int) -> Bounded:
    if two_k == 0:
        return Bounded.from_fraction(ZETA_ZERO)
    value = abs(mp.bernoulli(two_k)) * (2 * mp.pi) ** two_k / (2 * mp.factorial(two_k))
    return Bounded(value, value * mpf(2) ** (4 - mp.prec))


def even_zeta(two_k: int) -> Bounded:
    """zeta(2k) = |B_2k| (2 pi)^2k / (2 (2k)!) for the kernel expansions, with zeta(0) = -1/2."""
    if two_k < 0 or two_k % 2:
        raise ValueError(f"expected a non-negative even argument, got {two_k}")
    return _even_zeta(two_k, mp.dps)


even_zeta.cache_clear = _even_zeta.cache_clear  # type: ignore[attr-defined]
