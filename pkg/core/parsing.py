"""Text grammars for indices, colors, intervals, shifts and word literals."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from core.errors import ParseError
from core.indices import ColorVector, MultiIndex
from core.models import IntervalSpec

_INT = re.compile(r"\s*([+-]?\d+)\s*")
_INTERVAL = re.compile(r"\s*\(\s*([^,\s]+)\s*,\s*([^\s\)\]]+)\s*([\)\]])\s*")
_LEVEL_SUFFIX = re.compile(r"@N=(\d+)\s*$")


def _parse_int_list(text: str, offset: int = 0) -> list[int]:
    if not text.strip() or text.strip() in ("()", "∅"):
        return []
    values = []
    position = offset
    for chunk in text.split(","):
        match = _INT.fullmatch(chunk)
        if match is None:
            raise ParseError("expected an integer", text, position)
        values.append(int(match.group(1)))
        position += len(chunk) + 1
    return values


def parse_index(text: str) -> MultiIndex:
    """Parse "2,1,3" (or an empty string for the empty index)."""
    values = _parse_int_list(text)
    for position, value in enumerate(values):
        if value < 1:
            raise ParseError(f"index part {value} is not a positive integer", text, position)
    return MultiIndex(values)


def parse_colors(text: str, depth: Optional[int] = None) -> ColorVector:
    """Parse "a1,a2,...@N"; residues are reduced mod N."""
    body, sep, level_text = text.rpartition("@")
    if not sep:
        raise ParseError("colors need a level suffix '@N'", text, len(text))
    match = _INT.fullmatch(level_text)
    if match is None or int(match.group(1)) < 1:
        raise ParseError("level must be a positive integer", text, len(body) + 1)
    colors = ColorVector(level=int(match.group(1)), exponents=_parse_int_list(body))
    if depth is not None and colors.depth != depth:
        raise ParseError(f"{colors.depth} colors for an index of depth {depth}", text, 0)
    return colors


def _parse_end(token: str, text: str, position: int) -> Optional[int]:
    lowered = token.lower()
    if lowered in ("inf", "+inf", "-inf", "∞", "+∞", "-∞"):
        return None
    match = _INT.fullmatch(token)
    if match is None:
        raise ParseError(f"bad interval end {token!r}", text, position)
    return int(match.group(1))


def parse_interval(text: str) -> IntervalSpec:
    """Parse "(m1,m2)" or "(m1,m2]"; "inf"/"-inf" allowed for the ends."""
    match = _INTERVAL.fullmatch(text)
    if match is None:
        raise ParseError("expected '(m1,m2)' or '(m1,m2]'", text, 0)
    left, right, bracket = match.groups()
    if left.lower().lstrip("+") in ("inf", "∞"):
        raise ParseError("the left end can only be -inf", text, match.start(1))
    if right.startswith("-") and right.lower().endswith("inf"):
        raise ParseError("the right end can only be +inf", text, match.start(2))
    m1 = _parse_end(left, text, match.start(1))
    m2 = _parse_end(right, text, match.start(2))
    try:
        return IntervalSpec(m1=m1, m2=m2, right_closed=bracket == "]")
    except ValueError as exc:
        raise ParseError(str(exc).splitlines()[0], text, 0) from exc


def parse_shift(text: str) -> Fraction:
    """Parse a rational shift "p/q" (integers and decimals are accepted too)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("expected a rational 'p/q'", text, 0) from exc


def parse_word(text: str) -> tuple[str, int, tuple]:
    """Parse a word literal.

    "y:2,1"            stuffle word, level 1
    "y:2@1,1@3@N=4"    stuffle word with colored letters (k@a), level 4
    "x:1,0,1"          shuffle word over x0=0, x1=1
    "x:2,0,1@N=4"      shuffle word over x0=0 and y_b letters 1..N

    Returns (kind, level, letters) with kind in {"stuffle", "shuffle"}.
    """
    head, sep, body = text.partition(":")
    head = head.strip().lower()
    if not sep or head not in ("x", "y"):
        raise ParseError("word literals start with 'x:' or 'y:'", text, 0)
    level = 1
    suffix = _LEVEL_SUFFIX.search(body)
    if suffix:
        level = int(suffix.group(1))
        body = body[: suffix.start()]
    offset = len(head) + 1
    if head == "x":
        letters = tuple(_parse_int_list(body, offset))
        for position, letter in enumerate(letters):
            if not 0 <= letter <= level:
                raise ParseError(f"letter {letter} outside 0..{level}", text, offset + position)
        return "shuffle", level, letters
    letters = []
    position = offset
    for chunk in body.split(",") if body.strip() else []:
        exponent, _, color = chunk.partition("@")
        k = _INT.fullmatch(exponent)
        a = _INT.fullmatch(color) if color else None
        if k is None or int(k.group(1)) < 1 or (color and a is None):
            raise ParseError(f"bad stuffle letter {chunk!r}", text, position)
        letters.append((int(k.group(1)), int(a.group(1)) % level if a else 0))
        position += len(chunk) + 1
    return "stuffle", level, tuple(letters)
