"""
Game-value functions and checked 64-bit arithmetic.

A game-value function assigns an integer to a game between players i and j
in round r.  Four kinds are supported, each stored as a sparse table whose
missing keys read as 0:

  GENERAL          (i, j, r) -> value
  ROUND_OBLIVIOUS  (i, j)    -> value
  WIN_COUNT        (i, r)    -> value of a round-r game won by i
  POPULARITY       (i,)      -> value of any game won by i

Rounds are numbered from 1 (first round, n/2 games) to log2(n) (final).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from src.model.errors import ArithmeticOverflowError, KindError, ValidationError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

Key = tuple[int, ...]


# ---------------------------------------------------------------------------
# Checked arithmetic
# ---------------------------------------------------------------------------


def check_int64(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise ArithmeticOverflowError(f"{value} does not fit in a signed 64-bit integer")
    return value


def checked_add(a: int, b: int) -> int:
    return check_int64(a + b)


def checked_mul(a: int, b: int) -> int:
    return check_int64(a * b)


def checked_sum(values: Iterable[int]) -> int:
    """Sum left to right, failing on the first partial sum out of range."""
    total = 0
    for value in values:
        total = checked_add(total, value)
    return total


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def num_rounds(n: int) -> int:
    """log2(n) for a power of two n."""
    if not is_power_of_two(n):
        raise ValidationError(f"Player count must be a power of two, got {n}")
    return n.bit_length() - 1


# ---------------------------------------------------------------------------
# Value-function kinds
# ---------------------------------------------------------------------------


class ValueKind(str, Enum):
    GENERAL = "general"
    ROUND_OBLIVIOUS = "round_oblivious"
    WIN_COUNT = "win_count"
    POPULARITY = "popularity"

    @property
    def key_arity(self) -> int:
        return _KEY_ARITY[self]

    @property
    def key_fields(self) -> tuple[str, ...]:
        return _KEY_FIELDS[self]


_KEY_ARITY = {
    ValueKind.GENERAL: 3,
    ValueKind.ROUND_OBLIVIOUS: 2,
    ValueKind.WIN_COUNT: 2,
    ValueKind.POPULARITY: 1,
}

_KEY_FIELDS = {
    ValueKind.GENERAL: ("i", "j", "r"),
    ValueKind.ROUND_OBLIVIOUS: ("i", "j"),
    ValueKind.WIN_COUNT: ("i", "r"),
    ValueKind.POPULARITY: ("i",),
}


@dataclass(frozen=True)
class GameValueFunction:
    """
    Sparse, immutable game-value table of one kind.

    Zero entries are dropped on construction, so two functions that agree on
    every game compare equal regardless of how they were written down.
    """

    kind: ValueKind
    table: Mapping[Key, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        kind = ValueKind(self.kind)
        arity = kind.key_arity
        cleaned: dict[Key, int] = {}
        for raw_key, value in self.table.items():
            key = (raw_key,) if isinstance(raw_key, int) else tuple(raw_key)
            if len(key) != arity:
                raise ValidationError(f"{kind.value} keys need {arity} fields, got {raw_key!r}")
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"Game values must be integers, got {value!r} at {raw_key!r}")
            check_int64(value)
            if value != 0:
                cleaned[key] = value
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "table", MappingProxyType(cleaned))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def general(cls, table: Mapping[tuple[int, int, int], int]) -> "GameValueFunction":
        return cls(ValueKind.GENERAL, dict(table))

    @classmethod
    def round_oblivious(cls, table: Mapping[tuple[int, int], int]) -> "GameValueFunction":
        return cls(ValueKind.ROUND_OBLIVIOUS, dict(table))

    @classmethod
    def win_count(cls, table: Mapping[tuple[int, int], int]) -> "GameValueFunction":
        return cls(ValueKind.WIN_COUNT, dict(table))

    @classmethod
    def popularity(cls, values: Mapping[int, int]) -> "GameValueFunction":
        return cls(ValueKind.POPULARITY, {(i,): v for i, v in values.items()})

    # ------------------------------------------------------------------
    # Lookup
    # ------------------------------------------------------------------

    def value(self, i: int, j: int, r: int) -> int:
        """Value of the game between i (first argument) and j in round r."""
        if self.kind is ValueKind.GENERAL:
            return self.table.get((i, j, r), 0)
        if self.kind is ValueKind.ROUND_OBLIVIOUS:
            return self.table.get((i, j), 0)
        if self.kind is ValueKind.WIN_COUNT:
            return self.table.get((max(i, j), r), 0)
        return self.table.get((max(i, j),), 0)

    def popularity_of(self, i: int) -> int:
        if self.kind is not ValueKind.POPULARITY:
            raise KindError(f"popularity_of needs a popularity function, got {self.kind.value}")
        return self.table.get((i,), 0)

    def items(self) -> Iterator[tuple[Key, int]]:
        """Nonzero entries in sorted key order."""
        for key in sorted(self.table):
            yield key, self.table[key]

    def distinct_values(self, n: int) -> set[int]:
        """Values some game of an n-player tournament can earn; absent keys count as 0."""
        return {self.table.get(key, 0) for key in self.dense_keys(n)}

    def dense_size(self, n: int) -> int:
        rounds = num_rounds(n)
        if self.kind is ValueKind.GENERAL:
            return n * (n - 1) * rounds
        if self.kind is ValueKind.ROUND_OBLIVIOUS:
            return n * (n - 1)
        if self.kind is ValueKind.WIN_COUNT:
            # player 1 never wins a game
            return (n - 1) * rounds
        return n - 1

    def dense_keys(self, n: int) -> Iterator[Key]:
        rounds = num_rounds(n)
        players = range(1, n + 1)
        if self.kind is ValueKind.GENERAL:
            for i in players:
                for j in players:
                    if i != j:
                        for r in range(1, rounds + 1):
                            yield (i, j, r)
        elif self.kind is ValueKind.ROUND_OBLIVIOUS:
            for i in players:
                for j in players:
                    if i != j:
                        yield (i, j)
        elif self.kind is ValueKind.WIN_COUNT:
            for i in range(2, n + 1):
                for r in range(1, rounds + 1):
                    yield (i, r)
        else:
            for i in range(2, n + 1):
                yield (i,)

    def validate(self, n: int) -> None:
        """Check every key against an n-player tournament."""
        rounds = num_rounds(n)
        for key in self.table:
            fields = dict(zip(self.kind.key_fields, key))
            for name in ("i", "j"):
                if name in fields and not 1 <= fields[name] <= n:
                    raise ValidationError(f"Player {fields[name]} out of range 1..{n} in key {key}")
            if "r" in fields and not 1 <= fields["r"] <= rounds:
                raise ValidationError(f"Round {fields['r']} out of range 1..{rounds} in key {key}")
            if "j" in fields and fields["i"] == fields["j"]:
                raise ValidationError(f"A player cannot play itself: key {key}")


# ---------------------------------------------------------------------------
# Player evaluation function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlayerEvalFunction:
    """p(i, w): total value player i collects by winning its first w games."""

    n: int
    table: Mapping[tuple[int, int], int]

    def __call__(self, i: int, w: int) -> int:
        if w == 0:
            return 0
        return self.table[(i, w)]


def player_eval_from_wincount(v_prime: GameValueFunction, n: int) -> PlayerEvalFunction:
    """Prefix sums p(i, w) = v'(i, 1) + ... + v'(i, w), with p(i, 0) = 0."""
    if v_prime.kind is not ValueKind.WIN_COUNT:
        raise KindError(f"Expected a win_count function, got {v_prime.kind.value}")
    rounds = num_rounds(n)
    table: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        running = 0
        table[(i, 0)] = 0
        for w in range(1, rounds + 1):
            running = checked_add(running, v_prime.table.get((i, w), 0))
            table[(i, w)] = running
    return PlayerEvalFunction(n=n, table=MappingProxyType(table))
