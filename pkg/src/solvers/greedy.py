"""
Greedy solvers for popularity-based value functions.

With popularity values the value of a game is the popularity of its winner,
so a seeding is worth sum_i w(i) * v_i.  Players are seeded strongest first
into open subtournaments; a player closing an r-round block wins r games.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from src.brackets.builder import BracketBuilder
from src.model.errors import KindError, ValidationError
from src.model.instance import Instance, detect_win_count
from src.model.values import GameValueFunction, ValueKind, checked_add, checked_mul, num_rounds
from src.solvers.base import Algorithm, SolveResult, checked_result

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PopularityInstance:
    """Popularity v_i for every player 1..n (non-negative)."""

    n: int
    v: Mapping[int, int]

    def __post_init__(self) -> None:
        num_rounds(self.n)
        dense = {i: int(self.v.get(i, 0)) for i in range(1, self.n + 1)}
        extra = set(self.v) - set(dense)
        if extra:
            raise ValidationError(f"Popularity given for unknown players {sorted(extra)}")
        negative = sorted(i for i, value in dense.items() if value < 0)
        if negative:
            raise ValidationError(f"Popularity values must be non-negative, players {negative} are not")
        object.__setattr__(self, "v", MappingProxyType(dense))

    @classmethod
    def from_instance(cls, instance: Instance) -> "PopularityInstance":
        """Lower a popularity instance, or any instance whose win-count form is round-constant."""
        if instance.kind is ValueKind.POPULARITY:
            return cls(instance.n, {i: instance.values.popularity_of(i) for i in range(1, instance.n + 1)})
        v_prime = detect_win_count(instance)
        if v_prime is None:
            raise KindError("Instance is not popularity-based")
        v: dict[int, int] = {}
        for i in range(2, instance.n + 1):
            per_round = {v_prime.table.get((i, r), 0) for r in range(1, instance.rounds + 1)}
            if len(per_round) > 1:
                raise KindError(f"Value of games won by {i} depends on the round")
            v[i] = per_round.pop() if per_round else 0
        return cls(instance.n, v)

    @classmethod
    def try_from_instance(cls, instance: Instance) -> Optional["PopularityInstance"]:
        try:
            return cls.from_instance(instance)
        except (KindError, ValidationError):
            return None

    def to_instance(self) -> Instance:
        return Instance(n=self.n, values=GameValueFunction.popularity(dict(self.v)))

    def distinct_values(self) -> set[int]:
        """Popularity values of players 2..n; player 1 never wins a game."""
        return {self.v[i] for i in range(2, self.n + 1)}

    def is_monotone(self) -> bool:
        """v_i is non-decreasing in strength over the players who can win."""
        return all(self.v[i] <= self.v[i + 1] for i in range(2, self.n))


def greedy_two_values(instance: PopularityInstance) -> SolveResult:
    values = instance.distinct_values()
    if len(values) > 2:
        raise KindError(f"greedy_two_values needs at most two popularity values, got {sorted(values)}")
    popular = max(values, default=0)

    builder = BracketBuilder(instance.n)
    total = 0
    for player in range(instance.n, 0, -1):
        v = instance.v[player]
        slot = builder.largest() if v == popular else builder.smallest()
        rounds = builder.close(player, slot)
        total = checked_add(total, checked_mul(rounds, v))

    logger.debug(f"Two-value greedy total {total} (popular value {popular})")
    return checked_result(instance.to_instance(), total, builder.seeding(), Algorithm.GREEDY2)


def greedy_agree_order(instance: PopularityInstance) -> SolveResult:
    if not instance.is_monotone():
        raise KindError("greedy_agree_order needs popularity values that are non-decreasing in strength")

    builder = BracketBuilder(instance.n)
    total = 0
    for player in range(instance.n, 0, -1):
        rounds = builder.close(player, builder.largest())
        total = checked_add(total, checked_mul(rounds, instance.v[player]))
    return checked_result(instance.to_instance(), total, builder.seeding(), Algorithm.AGREE)
