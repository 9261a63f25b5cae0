"""Index <-> word encodings.

Stuffle words have letters (k, a): exponent k, color residue a mod N.
Shuffle (binary) words have integer letters: 0 is x0 = dt/t and v in 1..N is
y_b = dt/(b - t) with b = exp(2 pi i (v - 1)/N); for N = 1 these are x0, x1.
"""

from __future__ import annotations

from typing import Optional, Sequence

from core.errors import DecodeError
from core.indices import ColorVector, MultiIndex, check_colors

X0 = 0
DIVERGENT_SHUFFLE = 1
DIVERGENT_STUFFLE = (1, 0)

StuffleLetter = tuple[int, int]


def encode_binary(k: Sequence[int], colors: Optional[ColorVector] = None) -> tuple[int, ...]:
    """Binary word of Li(k; mu): blocks y_{b_i} x0^(k_i - 1) with b_i = (mu_i ... mu_r)^-1."""
    k = MultiIndex(k)
    check_colors(k, colors)
    level = 1 if colors is None else colors.level
    exponents = (0,) * len(k) if colors is None else colors.exponents
    codes: list[int] = []
    tail = 0
    for a in reversed(exponents):
        tail = (tail + a) % level
        codes.append((-tail) % level + 1)
    codes.reverse()
    word: list[int] = []
    for part, code in zip(k, codes):
        word.append(code)
        word.extend([X0] * (part - 1))
    return tuple(word)


def decode_binary(word: Sequence[int], level: int = 1) -> tuple[MultiIndex, ColorVector]:
    """Inverse of encode_binary; the word must start with a y letter."""
    word = tuple(word)
    if word and word[0] == X0:
        raise DecodeError(f"binary word {word} starts with x0 and encodes no index")
    parts: list[int] = []
    points: list[int] = []
    for letter in word:
        if not 0 <= letter <= level:
            raise DecodeError(f"letter {letter} is outside 0..{level}")
        if letter == X0:
            parts[-1] += 1
        else:
            parts.append(1)
            points.append(letter - 1)
    exponents = []
    for i, e in enumerate(points):
        following = points[i + 1] if i + 1 < len(points) else 0
        exponents.append((following - e) % level)
    return MultiIndex(parts), ColorVector(level=level, exponents=tuple(exponents))


def stuffle_word(k: Sequence[int], colors: Optional[ColorVector] = None) -> tuple[StuffleLetter, ...]:
    k = MultiIndex(k)
    check_colors(k, colors)
    exponents = (0,) * len(k) if colors is None else colors.exponents
    return tuple(zip(k, exponents))


def index_of_stuffle_word(word: Sequence[StuffleLetter], level: int = 1) -> tuple[MultiIndex, Optional[ColorVector]]:
    """(k, colors) of a stuffle word; colors is None at level 1."""
    k = MultiIndex(letter[0] for letter in word)
    if level == 1:
        return k, None
    return k, ColorVector(level=level, exponents=tuple(letter[1] for letter in word))


def divergent_letter(kind: str):
    return DIVERGENT_STUFFLE if kind == "stuffle" else DIVERGENT_SHUFFLE


def trailing_divergent(word: Sequence, kind: str) -> int:
    """Number of trailing divergent letters."""
    d = divergent_letter(kind)
    count = 0
    for letter in reversed(word):
        if letter != d:
            break
        count += 1
    return count


def is_admissible_word(word: Sequence, kind: str) -> bool:
    if kind == "shuffle" and word and word[0] == X0:
        return False
    return trailing_divergent(word, kind) == 0


def render_letter(letter, kind: str, level: int) -> str:
    if kind == "stuffle":
        k, a = letter
        return f"y{k}" if level == 1 else f"y{k}@{a}"
    if letter == X0:
        return "x0"
    return "x1" if level == 1 else f"x1@{letter - 1}"


def render_word(word: Sequence, kind: str, level: int = 1) -> str:
    if not word:
        return "∅"
    return "".join(render_letter(letter, kind, level) for letter in word)
