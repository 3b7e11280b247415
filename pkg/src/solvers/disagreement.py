"""
Disagreement between popularity and strength, and the FPT algorithm for it.

The disagreement k is the size of the smallest player set N' whose removal
leaves popularity non-decreasing in strength.  For every guess of how many
games each player of N' wins, a restricted greedy seeds N' into reserved
blocks and everyone else as if popular; the best completed guess wins.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from src.brackets.builder import BracketBuilder
from src.model.instance import Seeding
from src.model.values import checked_add, checked_mul
from src.solvers.base import Algorithm, SolveResult, checked_result
from src.solvers.greedy import PopularityInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DisagreementSet:
    players: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.players)


@dataclass(frozen=True)
class WinGuess:
    assignment: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))


# ---------------------------------------------------------------------------
# Minimum disagreement set
# ---------------------------------------------------------------------------


def _conflict(players: Sequence[int], v: Mapping[int, int]) -> Optional[tuple[int, int]]:
    """A pair i > j with v_i < v_j, read off the first position where the two orders differ."""
    by_strength = sorted(players, reverse=True)
    by_value = sorted(players, key=lambda p: (v[p], p), reverse=True)
    for stronger, favourite in zip(by_strength, by_value):
        if stronger != favourite:
            return stronger, favourite
    return None


def _search(players: tuple[int, ...], v: Mapping[int, int], budget: int) -> Optional[set[int]]:
    pair = _conflict(players, v)
    if pair is None:
        return set()
    if budget == 0:
        return None
    for drop in sorted(pair):
        rest = tuple(p for p in players if p != drop)
        found = _search(rest, v, budget - 1)
        if found is not None:
            return found | {drop}
    return None


def compute_disagreement_set(instance: PopularityInstance) -> DisagreementSet:
    players = tuple(range(1, instance.n + 1))
    k = 0
    while True:
        found = _search(players, instance.v, k)
        if found is not None:
            return DisagreementSet(frozenset(found))
        k += 1


# ---------------------------------------------------------------------------
# FPT algorithm
# ---------------------------------------------------------------------------


def _run_guess(instance: PopularityInstance, guess: WinGuess) -> Optional[tuple[int, Seeding]]:
    """Restricted greedy for one guess; ``None`` when the guess cannot be realized."""
    reserved = sorted(guess.assignment, key=lambda p: (guess.assignment[p], p), reverse=True)
    others = [p for p in range(instance.n, 0, -1) if p not in guess.assignment]
    builder = BracketBuilder(instance.n)
    total = 0
    a = b = 0

    while a < len(others) or b < len(reserved):
        r = builder.max_open_rounds()
        if b < len(reserved) and guess.assignment[reserved[b]] >= r:
            player = reserved[b]
            if guess.assignment[player] > r:
                return None
            slot = builder.find(r, player)
            b += 1
        elif a < len(others):
            player = others[a]
            slot = builder.largest(player)
            a += 1
        else:
            # reserved players left whose guesses are smaller than every open block
            return None
        if slot is None:
            return None
        rounds = builder.close(player, slot)
        total = checked_add(total, checked_mul(rounds, instance.v[player]))

    return total, builder.seeding()


def fpt_disagreement(instance: PopularityInstance) -> SolveResult:
    disagreeing = sorted(compute_disagreement_set(instance).players)
    top = instance.n.bit_length() - 1
    best: Optional[tuple[int, Seeding]] = None
    aborted = 0

    for wins in itertools.product(range(top + 1), repeat=len(disagreeing)):
        guess = WinGuess(dict(zip(disagreeing, wins)))
        outcome = _run_guess(instance, guess)
        if outcome is None:
            aborted += 1
            continue
        if best is None or outcome[0] > best[0] or (outcome[0] == best[0] and outcome[1].order < best[1].order):
            best = outcome

    logger.debug(f"FPT: k={len(disagreeing)}, {aborted} aborted guesses, best {best[0] if best else None}")
    if best is None:
        raise AssertionError("Every win-count guess aborted")
    value, seeding = best
    return checked_result(instance.to_instance(), value, seeding, Algorithm.FPT)
