"""Deterministic instance grids shared by the suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterator, Optional

from core.config import settings
from core.indices import MultiIndex
from core.models import IntervalSpec

SHIFT_DENOMINATORS = (2, 3, 4, 5, 7)


def option(options: dict[str, Any], name: str, default: Any = None) -> Any:
    """options[name], else the settings field of that name, else default."""
    value = options.get(name)
    if value is not None:
        return value
    return getattr(settings, name, default)


def rng(options: dict[str, Any], salt: str) -> random.Random:
    """Seeded generator; the salt keeps suites independent of each other's draws."""
    return random.Random(f"{option(options, 'seed')}:{salt}")


def compositions(weight: int, depth: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of `depth` positive integers summing to `weight`."""
    if depth == 0:
        if weight == 0:
            yield ()
        return
    for head in range(1, weight - depth + 2):
        for rest in compositions(weight - head, depth - 1):
            yield (head,) + rest


def indices(max_weight: int, max_depth: int, *, admissible: bool = False, min_depth: int = 0) -> list[MultiIndex]:
    """Every index with depth in [min_depth, max_depth] and weight <= max_weight, by (depth, weight, parts)."""
    out = []
    for depth in range(min_depth, max_depth + 1):
        for weight in range(depth, max_weight + 1):
            for parts in compositions(weight, depth):
                index = MultiIndex(parts)
                if admissible and not index.is_admissible:
                    continue
                out.append(index)
    return out


def windows(radius: int) -> list[IntervalSpec]:
    """All open windows (m1, m2) with |m1|, |m2| <= radius."""
    return [IntervalSpec(m1=a, m2=b) for a in range(-radius, radius + 1) for b in range(a + 1, radius + 1)]


def sample_shift(generator: random.Random, bound: int = 3) -> Fraction:
    """Small-denominator non-integer rational in (-bound, bound); never a pole of an integer window."""
    denominator = generator.choice(SHIFT_DENOMINATORS)
    while True:
        numerator = generator.randint(-bound * denominator + 1, bound * denominator - 1)
        if numerator % denominator:
            return Fraction(numerator, denominator)


def sample(generator: random.Random, population: list, count: Optional[int]) -> list:
    """count distinct elements in their original order, or all of them."""
    if count is None or count >= len(population):
        return list(population)
    chosen = sorted(generator.sample(range(len(population)), count))
    return [population[i] for i in chosen]
