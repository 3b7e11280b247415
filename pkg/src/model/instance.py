"""
Instances, seedings and tournament evaluation.

Players are the integers 1..n and the larger id always wins.  A seeding is
stored as the list of players in position order, so ``order[p - 1]`` is the
player seeded at position p.  Evaluation plays the bracket round by round:
in every pairing the first argument handed to the value function is the
player coming from the lower-position half.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterator, Mapping, NamedTuple, Optional

from src.model.errors import KindError, ValidationError
from src.model.values import (
    GameValueFunction,
    ValueKind,
    check_int64,
    checked_add,
    checked_mul,
    num_rounds,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Core records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """
    A tournament value maximization instance.

    Parameters
    ----------
    n : int
        Number of players, a power of two (1 is allowed).
    values : GameValueFunction
        The game-value function over players 1..n.
    target : int, optional
        The decision threshold V; a seeding is a yes-witness when its value
        is at least V.
    """

    n: int
    values: GameValueFunction
    target: Optional[int] = None

    def __post_init__(self) -> None:
        num_rounds(self.n)
        self.values.validate(self.n)
        if self.target is not None:
            check_int64(self.target)

    @property
    def kind(self) -> ValueKind:
        return self.values.kind

    @property
    def rounds(self) -> int:
        return num_rounds(self.n)

    def value(self, i: int, j: int, r: int) -> int:
        return self.values.value(i, j, r)


@dataclass(frozen=True)
class Seeding:
    """Players in position order; always a permutation of 1..len(order)."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValidationError(f"Seeding is not a permutation of 1..{len(order)}: {list(order)}")
        num_rounds(len(order))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def position_of(self, player: int) -> int:
        """1-based seed position of *player*."""
        return self.order.index(player) + 1

    def swapped(self, a: int, b: int) -> "Seeding":
        """Copy with players *a* and *b* exchanging positions."""
        order = list(self.order)
        pa, pb = order.index(a), order.index(b)
        order[pa], order[pb] = order[pb], order[pa]
        return Seeding(tuple(order))


class Game(NamedTuple):
    round: int
    winner: int
    loser: int
    value: int


@dataclass(frozen=True)
class EvaluationReport:
    total: int
    games: tuple[Game, ...]
    winner: int
    win_counts: Mapping[int, int] = field(default_factory=dict)

    def round_totals(self) -> dict[int, int]:
        """Sum of game values per round."""
        totals: dict[int, int] = {}
        for game in self.games:
            totals[game.round] = checked_add(totals.get(game.round, 0), game.value)
        return totals

    def meets_target(self, target: int) -> bool:
        return self.total >= target

    def opponents(self, player: int) -> list[Game]:
        """Every game *player* took part in, in round order."""
        return [g for g in self.games if player in (g.winner, g.loser)]


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(instance: Instance, seeding: Seeding) -> EvaluationReport:
    """Play out the bracket and total the game values."""
    if len(seeding) != instance.n:
        raise ValidationError(f"Seeding has {len(seeding)} players, instance has {instance.n}")

    values = instance.values
    alive = list(seeding.order)
    wins = {player: 0 for player in alive}
    games: list[Game] = []
    total = 0
    r = 1
    while len(alive) > 1:
        survivors = []
        for k in range(0, len(alive), 2):
            first, second = alive[k], alive[k + 1]
            value = values.value(first, second, r)
            winner, loser = (first, second) if first > second else (second, first)
            games.append(Game(r, winner, loser, value))
            total = checked_add(total, value)
            wins[winner] += 1
            survivors.append(winner)
        alive = survivors
        r += 1

    return EvaluationReport(
        total=total,
        games=tuple(games),
        winner=alive[0],
        win_counts=MappingProxyType(wins),
    )


def random_seeding(n: int, rng: random.Random) -> Seeding:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return Seeding(tuple(order))


# ---------------------------------------------------------------------------
# Normalizations
# ---------------------------------------------------------------------------


def _mirror(key: tuple[int, ...]) -> tuple[int, ...]:
    return (key[1], key[0], *key[2:])


def is_home_team_oblivious(instance: Instance) -> bool:
    """True when v(i, j, r) = v(j, i, r) for every game."""
    if instance.kind in (ValueKind.WIN_COUNT, ValueKind.POPULARITY):
        return True
    table = instance.values.table
    return all(table.get(_mirror(key), 0) == value for key, value in table.items())


def symmetrize(instance: Instance) -> Instance:
    """Replace each ordered pair's value by the better of both orders."""
    if instance.kind in (ValueKind.WIN_COUNT, ValueKind.POPULARITY):
        return instance

    table = instance.values.table
    symmetric: dict[tuple[int, ...], int] = {}
    for key in table:
        best = max(table.get(key, 0), table.get(_mirror(key), 0))
        symmetric[key] = best
        symmetric[_mirror(key)] = best
    values = GameValueFunction(instance.kind, symmetric)
    return Instance(n=instance.n, values=values, target=instance.target)


def shift(instance: Instance, c: int) -> Instance:
    """Add *c* to every game value; the target moves by (n - 1) * c."""
    values = instance.values
    keys = set(values.dense_keys(instance.n)) | set(values.table)
    shifted = {key: checked_add(values.table.get(key, 0), c) for key in keys}
    target = instance.target
    if target is not None:
        target = checked_add(target, checked_mul(instance.n - 1, c))
    return Instance(n=instance.n, values=GameValueFunction(values.kind, shifted), target=target)


def detect_win_count(instance: Instance) -> Optional[GameValueFunction]:
    """
    Return v'(i, r) when every game value depends only on the winner and round.

    Popularity functions always qualify (v'(i, r) = v_i); general and
    round-oblivious functions qualify when v(i, j, r) = v(j, i, r) = v'(i, r)
    for every i > j.  Returns ``None`` otherwise.
    """
    values = instance.values
    if values.kind is ValueKind.WIN_COUNT:
        return values
    rounds = instance.rounds
    if values.kind is ValueKind.POPULARITY:
        return GameValueFunction.win_count(
            {(i, r): values.popularity_of(i) for i in range(2, instance.n + 1) for r in range(1, rounds + 1)}
        )
    if values.kind not in (ValueKind.GENERAL, ValueKind.ROUND_OBLIVIOUS):
        raise KindError(f"Cannot inspect {values.kind.value} functions")

    v_prime: dict[tuple[int, int], int] = {}
    for i in range(2, instance.n + 1):
        for r in range(1, rounds + 1):
            expected = values.value(i, 1, r)
            for j in range(1, i):
                if values.value(i, j, r) != expected or values.value(j, i, r) != expected:
                    return None
            v_prime[(i, r)] = expected
    return GameValueFunction.win_count(v_prime)


def wincount_total(p: Callable[[int, int], int], win_counts: Mapping[int, int]) -> int:
    """Sum of p(i, w(i)) over all players."""
    total = 0
    for player, wins in sorted(win_counts.items()):
        total = checked_add(total, p(player, wins))
    return total
