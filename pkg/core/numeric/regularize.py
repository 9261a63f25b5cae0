"""Stuffle and shuffle regularized values as polynomials in T.

A divergent word decomposes as sum_i w_i * d^(*i) with convergent w_i; setting the
value of the divergent letter d to T gives zeta^T = sum_i value(w_i) T^i.
"""

from __future__ import annotations

import logging
from typing import Callable, Iterable, Optional, Sequence

from core.indices import ColorVector, MultiIndex, check_colors
from core.numeric.bounded import Bounded, RegPoly
from core.numeric.mzv import colored_li
from core.words.algebra import WordPoly
from core.words.decompose import decompose
from core.words.encoding import decode_binary, index_of_stuffle_word

logger = logging.getLogger(__name__)


def regularized_value(
    parts: Iterable[tuple[int, WordPoly]],
    evaluate: Callable[[tuple], Bounded],
) -> RegPoly:
    coeffs: dict[int, Bounded] = {}
    for power, poly in parts:
        total = Bounded.zero()
        for word, coeff in poly.items():
            total = total + evaluate(word) * coeff
        coeffs[power] = total
    if not coeffs:
        return RegPoly()
    return RegPoly([coeffs.get(i, Bounded.zero()) for i in range(max(coeffs) + 1)])


def _stuffle_evaluator(level: int, eps: Optional[float]) -> Callable[[tuple], Bounded]:
    def evaluate(word: tuple) -> Bounded:
        index, colors = index_of_stuffle_word(word, level)
        return colored_li(index, colors, eps)

    return evaluate


def _shuffle_evaluator(level: int, eps: Optional[float]) -> Callable[[tuple], Bounded]:
    def evaluate(word: tuple) -> Bounded:
        index, colors = decode_binary(word, level)
        return colored_li(index, colors if level > 1 else None, eps)

    return evaluate


def reg_stuffle(k: Sequence[int], colors: Optional[ColorVector] = None, eps: Optional[float] = None) -> RegPoly:
    """zeta_*^T(k), or Li_*^T(k; mu) when colors are given."""
    k = MultiIndex(k)
    check_colors(k, colors)
    level = 1 if colors is None else colors.level
    parts = decompose(WordPoly.from_index("stuffle", k, colors))
    return regularized_value(parts, _stuffle_evaluator(level, eps))


def reg_shuffle(k: Sequence[int], colors: Optional[ColorVector] = None, eps: Optional[float] = None) -> RegPoly:
    """zeta_ш^T(k), or Li_ш^T(k; mu) when colors are given."""
    k = MultiIndex(k)
    check_colors(k, colors)
    level = 1 if colors is None else colors.level
    parts = decompose(WordPoly.from_index("shuffle", k, colors))
    return regularized_value(parts, _shuffle_evaluator(level, eps))


def regularize(kind: str, k: Sequence[int], colors: Optional[ColorVector] = None, eps: Optional[float] = None) -> RegPoly:
    if kind == "stuffle":
        return reg_stuffle(k, colors, eps)
    if kind == "shuffle":
        return reg_shuffle(k, colors, eps)
    raise ValueError(f"unknown regularization {kind!r}")


def word_poly_value(poly: WordPoly, eps: Optional[float] = None) -> RegPoly:
    """Regularized value of an arbitrary word polynomial of either kind."""
    evaluator = _stuffle_evaluator if poly.kind == "stuffle" else _shuffle_evaluator
    return regularized_value(decompose(poly), evaluator(poly.level, eps))
