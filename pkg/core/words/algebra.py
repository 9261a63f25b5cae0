"""Formal word polynomials with the stuffle (harmonic) and shuffle products."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterator, Literal, Mapping, Optional, Sequence, Union

from core.errors import LevelError
from core.indices import ColorVector
from core.words.encoding import encode_binary, render_word, stuffle_word

Kind = Literal["stuffle", "shuffle"]
Word = tuple
Scalar = Union[int, Fraction]


class WordPoly:
    """Finite Q-linear combination of words of one kind and level; zero terms are dropped."""

    __slots__ = ("kind", "level", "_terms")

    def __init__(self, kind: Kind, level: int = 1, terms: Optional[Mapping[Word, Scalar]] = None):
        if kind not in ("stuffle", "shuffle"):
            raise ValueError(f"unknown word kind {kind!r}")
        self.kind = kind
        self.level = level
        clean: dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        self._terms = clean

    @classmethod
    def unit(cls, kind: Kind, level: int = 1) -> "WordPoly":
        return cls(kind, level, {(): 1})

    @classmethod
    def from_word(cls, kind: Kind, word: Sequence, level: int = 1, coeff: Scalar = 1) -> "WordPoly":
        return cls(kind, level, {tuple(word): coeff})

    @classmethod
    def from_index(cls, kind: Kind, k: Sequence[int], colors: Optional[ColorVector] = None) -> "WordPoly":
        level = 1 if colors is None else colors.level
        word = stuffle_word(k, colors) if kind == "stuffle" else encode_binary(k, colors)
        return cls.from_word(kind, word, level)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0])))

    def words(self) -> list[Word]:
        return [word for word, _ in self.items()]

    def coefficient(self, word: Sequence) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "WordPoly") -> None:
        if other.kind != self.kind:
            raise ValueError(f"cannot combine {self.kind} and {other.kind} words")
        if other.level != self.level:
            raise LevelError(f"cannot combine words of levels {self.level} and {other.level}")

    def __add__(self, other: "WordPoly") -> "WordPoly":
        self._check(other)
        terms = Counter(self._terms)
        for word, coeff in other._terms.items():
            terms[word] = terms.get(word, Fraction(0)) + coeff
        return WordPoly(self.kind, self.level, terms)

    def __neg__(self) -> "WordPoly":
        return self.scale(-1)

    def __sub__(self, other: "WordPoly") -> "WordPoly":
        return self + (-other)

    def scale(self, factor: Scalar) -> "WordPoly":
        return WordPoly(self.kind, self.level, {w: c * factor for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, WordPoly):
            return product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordPoly):
            return NotImplemented
        return (self.kind, self.level, self._terms) == (other.kind, other.level, other._terms)

    def __hash__(self):
        return hash((self.kind, self.level, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for word, coeff in self.items():
            text = render_word(word, self.kind, self.level)
            magnitude = abs(coeff)
            if magnitude != 1:
                text = f"{magnitude}·{text}"
            if not parts:
                parts.append(f"-{text}" if coeff < 0 else text)
            else:
                parts.append(f" - {text}" if coeff < 0 else f" + {text}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"WordPoly({self.kind}, N={self.level}: {self.render()})"


@lru_cache(maxsize=65536)
def stuffle_words(u: Word, v: Word, level: int = 1) -> tuple[tuple[Word, int], ...]:
    """Expansion of u * v by the recursion (ua)*(vb) = (u*vb)a + (ua*v)b + (u*v)[a+b]."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    a, b = u[-1], v[-1]
    out: Counter = Counter()
    for word, c in stuffle_words(u[:-1], v, level):
        out[word + (a,)] += c
    for word, c in stuffle_words(u, v[:-1], level):
        out[word + (b,)] += c
    merged = (a[0] + b[0], (a[1] + b[1]) % level)
    for word, c in stuffle_words(u[:-1], v[:-1], level):
        out[word + (merged,)] += c
    return tuple(out.items())


@lru_cache(maxsize=65536)
def shuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """Expansion of u ш v by the recursion (ua) ш (vb) = (u ш vb)a + (ua ш v)b."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    for word, c in shuffle_words(u[:-1], v):
        out[word + (u[-1],)] += c
    for word, c in shuffle_words(u, v[:-1]):
        out[word + (v[-1],)] += c
    return tuple(out.items())


def product_words(kind: Kind, level: int, u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    if kind == "stuffle":
        return stuffle_words(tuple(u), tuple(v), level)
    return shuffle_words(tuple(u), tuple(v))


def product(a: WordPoly, b: WordPoly) -> WordPoly:
    a._check(b)
    terms: Counter = Counter()
    for (u, cu), (v, cv) in cartesian(a._terms.items(), b._terms.items()):
        for word, c in product_words(a.kind, a.level, u, v):
            terms[word] += cu * cv * c
    return WordPoly(a.kind, a.level, terms)


def stuffle(a: WordPoly, b: WordPoly) -> WordPoly:
    if a.kind != "stuffle":
        raise ValueError("stuffle() takes stuffle words")
    return product(a, b)


def shuffle(a: WordPoly, b: WordPoly) -> WordPoly:
    if a.kind != "shuffle":
        raise ValueError("shuffle() takes shuffle words")
    return product(a, b)


def power(letter, exponent: int, kind: Kind, level: int = 1) -> WordPoly:
    """letter^(product exponent)."""
    result = WordPoly.unit(kind, level)
    single = WordPoly.from_word(kind, (letter,), level)
    for _ in range(exponent):
        result = product(result, single)
    return result


def star_expansion(word: Sequence[tuple[int, int]], level: int = 1) -> WordPoly:
    """Strict stuffle words whose values sum to the star value of `word`.

    Each of the 2^(r-1) ways of merging adjacent letters contributes one word;
    merged letters add exponents and color residues.
    """
    word = tuple(word)
    if len(word) <= 1:
        return WordPoly.from_word("stuffle", word, level)
    terms: Counter = Counter()
    for cuts in cartesian((False, True), repeat=len(word) - 1):
        merged = [word[0]]
        for letter, joined in zip(word[1:], cuts):
            if joined:
                k, a = merged[-1]
                merged[-1] = (k + letter[0], (a + letter[1]) % level)
            else:
                merged.append(letter)
        terms[tuple(merged)] += 1
    return WordPoly("stuffle", level, terms)

