"""
Seeded instance generators shared by ``cli.py generate`` and the bench harness.

Every generator takes an explicit ``random.Random`` so the same seed always
produces the same instance.
"""

from __future__ import annotations

import logging
import random
from typing import Optional

from src.model.errors import ValidationError
from src.model.instance import Instance
from src.model.values import GameValueFunction, ValueKind, num_rounds
from src.solvers.greedy import PopularityInstance
from src.solvers.matching import make_tight_instance

logger = logging.getLogger(__name__)


def _check_range(low: int, high: int, density: float) -> None:
    if low > high:
        raise ValidationError(f"--low {low} exceeds --high {high}")
    if not 0.0 <= density <= 1.0:
        raise ValidationError(f"density must lie in [0, 1], got {density}")


def random_instance(
    kind: ValueKind | str,
    n: int,
    rng: random.Random,
    low: int = -9,
    high: int = 9,
    density: float = 1.0,
) -> Instance:
    """Each game key independently gets a uniform value in [low, high] with probability *density*."""
    kind = ValueKind(kind)
    num_rounds(n)
    _check_range(low, high, density)
    empty = GameValueFunction(kind, {})
    table = {}
    for key in empty.dense_keys(n):
        if rng.random() < density:
            table[key] = rng.randint(low, high)
    return Instance(n=n, values=GameValueFunction(kind, table))


def popularity_with_values(n: int, num_values: int, rng: random.Random, high: int = 9) -> Instance:
    """Popularity instance whose players share at most *num_values* distinct non-negative values."""
    num_rounds(n)
    if not 1 <= num_values <= high + 1:
        raise ValidationError(f"--values must lie in 1..{high + 1}, got {num_values}")
    palette = sorted(rng.sample(range(high + 1), num_values))
    v = {i: rng.choice(palette) for i in range(1, n + 1)}
    return PopularityInstance(n, v).to_instance()


def monotone_popularity(n: int, rng: random.Random, high: int = 9) -> Instance:
    """Popularity non-decreasing in strength."""
    num_rounds(n)
    values = sorted(rng.randint(0, high) for _ in range(n))
    return PopularityInstance(n, dict(zip(range(1, n + 1), values))).to_instance()


def planted_disagreement(n: int, k: int, rng: random.Random, high: int = 9) -> Instance:
    """
    Monotone popularity with *k* players re-drawn at random.

    Removing the re-drawn players restores monotonicity, so the disagreement
    is at most k (it may be smaller when a redraw happens to fit).
    """
    num_rounds(n)
    if not 0 <= k <= n:
        raise ValidationError(f"--k must lie in 0..{n}, got {k}")
    values = sorted(rng.randint(0, high) for _ in range(n))
    v = dict(zip(range(1, n + 1), values))
    for player in sorted(rng.sample(range(1, n + 1), k)):
        v[player] = rng.randint(0, high)
    return PopularityInstance(n, v).to_instance()


def tight_instance(n: int, scale: int) -> Instance:
    return make_tight_instance(n, scale)


# ---------------------------------------------------------------------------
# Bench families
# ---------------------------------------------------------------------------

BENCH_FAMILIES = ("tight", "win_count", "popularity", "two_value", "monotone", "round_oblivious")

DEFAULT_ALGORITHMS = {
    "tight": ("matching", "brute"),
    "win_count": ("dp", "brute"),
    "popularity": ("fpt", "brute"),
    "two_value": ("greedy2", "brute"),
    "monotone": ("agree", "dp", "brute"),
    "round_oblivious": ("matching", "brute"),
}


def family_instance(family: str, index: int, n: int, rng: random.Random, scale: Optional[int] = None) -> Instance:
    """
    The *index*-th instance of a bench family.

    ``tight`` ignores the RNG and uses scale 10 * (index + 1) unless *scale*
    is given; ``popularity`` plants a disagreement of index mod 3 players.
    Value-drawing families stay non-negative so approximation ratios are
    meaningful.
    """
    if family == "tight":
        return tight_instance(n, scale if scale is not None else 10 * (index + 1))
    if family == "win_count":
        return random_instance(ValueKind.WIN_COUNT, n, rng, low=0, high=9)
    if family == "popularity":
        return planted_disagreement(n, index % 3, rng)
    if family == "two_value":
        return popularity_with_values(n, 2, rng)
    if family == "monotone":
        return monotone_popularity(n, rng)
    if family == "round_oblivious":
        return random_instance(ValueKind.ROUND_OBLIVIOUS, n, rng, low=0, high=9)
    raise ValidationError(f"Unknown bench family {family!r}; choose from {', '.join(BENCH_FAMILIES)}")
