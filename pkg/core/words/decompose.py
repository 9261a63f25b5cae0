"""Unique decomposition w = sum_i w_i * d^(*i) with admissible w_i.

d is the divergent letter: y1 (exponent 1, trivial color) for the stuffle product
and x1 for the shuffle product. For w = u d^s with u not ending in d,

    (u d^(s-1)) * d = s u d^s + R,

where every word of R ends in fewer than s copies of d, so D(w) is obtained from
D(u d^(s-1)) shifted by one power, minus D(R), all divided by s.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from core.errors import InternalError
from core.words.algebra import Kind, WordPoly, product_words
from core.words.encoding import divergent_letter, trailing_divergent

Decomposition = list[tuple[int, WordPoly]]
_Frozen = tuple[tuple[int, tuple[tuple[tuple, Fraction], ...]], ...]


def _freeze(parts: dict[int, dict[tuple, Fraction]]) -> _Frozen:
    frozen = []
    for power in sorted(parts):
        terms = tuple((w, c) for w, c in parts[power].items() if c)
        if terms:
            frozen.append((power, terms))
    return tuple(frozen)


@lru_cache(maxsize=16384)
def _decompose_word(kind: Kind, level: int, word: tuple) -> _Frozen:
    s = trailing_divergent(word, kind)
    if s == 0:
        return ((0, ((word, Fraction(1)),)),)
    d = divergent_letter(kind)
    shorter = word[:-1]
    parts: dict[int, dict[tuple, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for power, terms in _decompose_word(kind, level, shorter):
        for w, c in terms:
            parts[power + 1][w] += c
    own = 0
    for w, c in product_words(kind, level, shorter, (d,)):
        if w == word:
            own = c
            continue
        for power, terms in _decompose_word(kind, level, w):
            for v, cv in terms:
                parts[power][v] -= c * cv
    if own != s:
        raise InternalError(f"{word} appears {own} times in its own product, expected {s}")
    for power in parts:
        for w in parts[power]:
            parts[power][w] /= s
    return _freeze(parts)


def decompose(poly: WordPoly) -> Decomposition:
    """D(poly) as (power, admissible polynomial) pairs sorted by power."""
    collected: dict[int, WordPoly] = {}
    for word, coeff in poly.items():
        for power, terms in _decompose_word(poly.kind, poly.level, tuple(word)):
            piece = WordPoly(poly.kind, poly.level, {w: c * coeff for w, c in terms})
            collected[power] = collected[power] + piece if power in collected else piece
    return [(power, collected[power]) for power in sorted(collected) if not collected[power].is_zero()]


def stuffle_decompose(word: Sequence, level: int = 1) -> Decomposition:
    return decompose(WordPoly.from_word("stuffle", word, level))


def shuffle_decompose(word: Sequence, level: int = 1) -> Decomposition:
    return decompose(WordPoly.from_word("shuffle", word, level))


def reconstruct(parts: Iterable[tuple[int, WordPoly]], kind: Kind, level: int = 1) -> WordPoly:
    """sum_i w_i * d^(*i); inverts decompose."""
    d = WordPoly.from_word(kind, (divergent_letter(kind),), level)
    result = WordPoly(kind, level)
    powers = {0: WordPoly.unit(kind, level)}
    for power, poly in parts:
        for i in range(max(powers) + 1, power + 1):
            powers[i] = powers[i - 1] * d
        result = result + poly * powers[power]
    return result
