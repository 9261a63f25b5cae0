"""Multi-indices, color vectors and the slicing/reversal conventions used everywhere.

Positions are 1-based: a slice range (lo, hi) with 0 <= lo <= hi <= r+1 selects

    (i,j) -> k_{i+1} .. k_{j-1}      [i,j) -> k_i .. k_{j-1}
    (i,j] -> k_{i+1} .. k_j          [i,j] -> k_i .. k_j

and an empty selection is the empty index, which every evaluator treats as 1.
"""

from __future__ import annotations

from typing import Iterable, Literal, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import LevelError, ParameterError, RangeError

SliceEnds = Literal["closed-closed", "closed-open", "open-closed", "open-open"]


def _slice_positions(lo: int, hi: int, ends: SliceEnds, length: int) -> tuple[int, int]:
    """Return the 0-based python slice (start, stop) for a paper-style range."""
    if lo < 0 or hi > length + 1 or lo > hi + 1:
        raise RangeError(f"slice ({lo},{hi}) {ends} is outside positions 0..{length + 1}")
    left, right = ends.split("-")
    first = lo if left == "closed" else lo + 1
    last = hi if right == "closed" else hi - 1
    if last < first - 1:
        raise RangeError(f"slice ({lo},{hi}) {ends} is malformed")
    if last >= first and (first < 1 or last > length):
        raise RangeError(f"slice ({lo},{hi}) {ends} reaches outside 1..{length}")
    return first - 1, max(last, first - 1)


class MultiIndex(tuple):
    """An ordered tuple (k_1, ..., k_r) of positive exponents."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        values = tuple(int(p) for p in parts)
        if any(p < 1 for p in values):
            raise ParameterError(f"multi-index parts must be positive integers, got {values}")
        return super().__new__(cls, values)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def is_admissible(self) -> bool:
        return len(self) == 0 or self[-1] > 1

    def slice(self, lo: int, hi: int, ends: SliceEnds = "closed-closed") -> "MultiIndex":
        start, stop = _slice_positions(lo, hi, ends, len(self))
        return MultiIndex(tuple.__getitem__(self, slice(start, stop)))

    def reverse(self) -> "MultiIndex":
        return MultiIndex(tuple(reversed(self)))

    def shifted(self, offsets: Sequence[int]) -> "MultiIndex":
        """Return k + n for a non-negative offset vector n of the same depth."""
        if len(offsets) != len(self):
            raise ParameterError("offset vector must have the same depth as the index")
        return MultiIndex(a + b for a, b in zip(self, offsets))

    def __add__(self, other: Sequence[int]) -> "MultiIndex":  # concatenation
        return MultiIndex(tuple(self) + tuple(other))

    def __getitem__(self, item):
        if isinstance(item, slice):
            return MultiIndex(tuple.__getitem__(self, item))
        return tuple.__getitem__(self, item)

    def __repr__(self) -> str:
        return f"MultiIndex({', '.join(map(str, self))})"

    def __str__(self) -> str:
        return ",".join(map(str, self))


class SliceRange(BaseModel):
    model_config = ConfigDict(frozen=True)

    lo: int = Field(..., description="Left position (0..r+1)")
    hi: int = Field(..., description="Right position (0..r+1)")
    ends: SliceEnds = Field("closed-closed", description="Which ends of the range are closed")


class ColorVector(BaseModel):
    """Colors mu_i = exp(2 pi i a_i / N), stored as exact residues a_i mod N."""

    model_config = ConfigDict(frozen=True)

    level: int = Field(1, ge=1, description="Level N of the roots of unity")
    exponents: tuple[int, ...] = Field((), description="Residues a_i mod N, one per index part")

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, data):
        if isinstance(data, dict):
            level = int(data.get("level", 1))
            if level >= 1:
                data = {**data, "exponents": tuple(int(a) % level for a in data.get("exponents", ()))}
        return data

    @classmethod
    def trivial(cls, depth: int, level: int = 1) -> "ColorVector":
        return cls(level=level, exponents=(0,) * depth)

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.exponents)

    def product_exponent(self) -> int:
        """Exponent of mu_1 ... mu_r."""
        return sum(self.exponents) % self.level

    def slice(self, lo: int, hi: int, ends: SliceEnds = "closed-closed") -> "ColorVector":
        start, stop = _slice_positions(lo, hi, ends, len(self.exponents))
        return ColorVector(level=self.level, exponents=self.exponents[start:stop])

    def reverse(self) -> "ColorVector":
        return ColorVector(level=self.level, exponents=tuple(reversed(self.exponents)))

    def inverse(self) -> "ColorVector":
        return ColorVector(level=self.level, exponents=tuple(-a for a in self.exponents))

    def extended(self, *exponents: int) -> "ColorVector":
        return ColorVector(level=self.level, exponents=self.exponents + tuple(exponents))

    def concat(self, other: "ColorVector") -> "ColorVector":
        if other.level != self.level:
            raise LevelError(f"cannot concatenate colors of levels {self.level} and {other.level}")
        return ColorVector(level=self.level, exponents=self.exponents + other.exponents)

    def __str__(self) -> str:
        return f"{','.join(map(str, self.exponents))}@{self.level}"


def check_colors(k: Sequence[int], colors: ColorVector | None) -> None:
    if colors is not None and colors.depth != len(k):
        raise ParameterError(f"{colors.depth} colors given for an index of depth {len(k)}")


def colored_admissible(k: Sequence[int], colors: ColorVector | None) -> bool:
    """(k_r, mu_r) != (1, 1); the empty index is admissible."""
    if not k:
        return True
    if k[-1] > 1:
        return True
    return colors is not None and colors.exponents[-1] != 0


def slice_index(k: MultiIndex, rng: SliceRange) -> MultiIndex:
    return MultiIndex(k).slice(rng.lo, rng.hi, rng.ends)


def reverse(k: Sequence[int]) -> MultiIndex:
    return MultiIndex(tuple(reversed(tuple(k))))


def weight_depth(k: Sequence[int]) -> tuple[int, int]:
    return sum(k), len(k)


def repeated(value: int, times: int) -> MultiIndex:
    """The repetition notation {m}_r."""
    return MultiIndex((value,) * times)
