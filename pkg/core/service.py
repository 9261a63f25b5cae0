"""Entry points shared by the CLI, the MCP server and the in-process backend."""

from __future__ import annotations

import logging
from functools import lru_cache

from core.config import settings
from core.errors import MZVLabError, ParameterError
from core.hurwitz.finite import eval_finite, truncated_zeta
from core.models import EvalRequest, EvalResult, SweepSummary, VerifyRequest
from core.numeric.mzv import (
    alt_zeta,
    colored_li,
    colored_li_star,
    preserved_precision,
    set_working_precision,
    zeta,
    zeta_star,
)
from core.numeric.regularize import regularize
from core.parity.reports import render_value
from core.parsing import parse_colors, parse_index, parse_interval, parse_shift, parse_word
from core.words.algebra import WordPoly
from core.words.decompose import decompose
from core.words.encoding import divergent_letter, render_word

logger = logging.getLogger(__name__)


def render_decomposition(poly: WordPoly) -> str:
    """w_0 + w_1 * d + w_2 * d^(*2) + ..., one admissible polynomial per power of the divergent letter."""
    d = render_word((divergent_letter(poly.kind),), poly.kind, poly.level)
    parts = []
    for power, piece in decompose(poly):
        text = f"({piece.render()})"
        if power == 1:
            text += f" * {d}"
        elif power > 1:
            text += f" * {d}^*{power}"
        parts.append(text)
    return " + ".join(parts) or "0"


def compute(request: EvalRequest) -> str:
    """Rendered value for one evaluation request; raises MZVLabError on domain errors.

    A requested precision applies to this request only.
    """
    with preserved_precision():
        return _compute(request)


def _compute(request: EvalRequest) -> str:
    if request.precision is not None:
        set_working_precision(request.precision)
    eps = request.eps

    if request.kind == "decompose":
        if request.word:
            kind, level, letters = parse_word(request.word)
            return render_decomposition(WordPoly.from_word(kind, letters, level))
        k = parse_index(request.index)
        colors = parse_colors(request.colors, len(k)) if request.colors else None
        return render_decomposition(WordPoly.from_index(request.regularization, k, colors))

    k = parse_index(request.index)
    colors = parse_colors(request.colors, len(k)) if request.colors else None

    if request.kind == "finite":
        if request.interval is None:
            raise ParameterError("'finite' needs an interval such as (0,4)")
        iv = parse_interval(request.interval)
        return render_value(eval_finite(k, iv, parse_shift(request.shift), star=request.star, colors=colors))
    if request.kind == "truncated":
        if request.m is None:
            raise ParameterError("'truncated' needs the truncation point M")
        return render_value(truncated_zeta(k, request.m))
    if request.kind == "alt":
        if len(k) != 1:
            raise ParameterError(f"'alt' takes a single exponent, got ({k})")
        return render_value(alt_zeta(k[0], eps))
    if request.kind == "reg":
        return regularize(request.regularization, k, colors, eps).render()
    if request.kind == "star" or (request.star and request.kind in ("mzv", "colored")):
        value = zeta_star(k, eps) if colors is None else colored_li_star(k, colors, eps)
        return render_value(value)
    value = zeta(k, eps) if colors is None else colored_li(k, colors, eps)
    return render_value(value)


def evaluate(request: EvalRequest) -> EvalResult:
    """compute() with domain errors folded into the result."""
    try:
        return EvalResult(success=True, value=compute(request))
    except MZVLabError as exc:
        logger.warning("eval %s failed: %s", request.kind, exc)
        return EvalResult(success=False, error=f"{type(exc).__name__}: {exc}")


@lru_cache(maxsize=1)
def _sweep_graph():
    from core.graph.builder import build_graph

    return build_graph()


def verify(request: VerifyRequest) -> SweepSummary:
    """Run a suite through the sweep graph; unknown suites raise ParameterError before planning."""
    from core.suites.registry import get_suite

    get_suite(request.suite)
    logger.info("verify %s with options %s", request.suite, request.options)
    with preserved_precision():
        state = _sweep_graph().invoke({"request": request}, {"recursion_limit": 4 * (settings.max_retries + 4)})
    return state["summary"]
