"""
Exact solvers: exhaustive search and the subtournament-profile DP.

brute_force
    Enumerates seedings and keeps the lexicographically smallest optimum.
    With pruning, only one seeding per sibling-swap class is scored, on the
    symmetrized instance; the winner is then oriented game by game so the
    original (possibly home-team dependent) function attains the same value.

dp_wincount
    For win-count oriented functions the tournament value is the sum of
    p(i, w(i)), so only the number of wins per player matters.  Players are
    seeded strongest first; T[l, X] is the best value of seeding the l
    strongest players so that X describes the blocks still open.  The argmax
    round choices are replayed into a BracketBuilder to recover a seeding.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from src.brackets.builder import BracketBuilder
from src.brackets.profile import SubtournamentProfile, capacity, close_subtournament
from src.model.errors import KindError, RefusalError
from src.model.instance import Instance, Seeding, detect_win_count, evaluate, is_home_team_oblivious, symmetrize
from src.model.values import checked_add, num_rounds, player_eval_from_wincount
from src.settings.configs import get_settings
from src.solvers.base import Algorithm, SolveResult, checked_result

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------


def _canonical_orders(players: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """One order per sibling-swap class: each block's first half holds its smallest player."""
    if len(players) == 1:
        yield players
        return
    first, rest = players[0], players[1:]
    half = len(players) // 2
    for combo in itertools.combinations(rest, half - 1):
        chosen = set(combo)
        left = (first, *combo)
        right = tuple(p for p in rest if p not in chosen)
        for left_order in _canonical_orders(left):
            for right_order in _canonical_orders(right):
                yield left_order + right_order


def _orient(instance: Instance, order: tuple[int, ...]) -> tuple[int, ...]:
    """Swap halves wherever the reversed game is worth more; ties keep the smaller first player."""
    if len(order) == 1:
        return order
    half = len(order) // 2
    left = _orient(instance, order[:half])
    right = _orient(instance, order[half:])
    r = num_rounds(len(order))
    a, b = max(left), max(right)
    forward = instance.value(a, b, r)
    backward = instance.value(b, a, r)
    if backward > forward or (backward == forward and right[0] < left[0]):
        return right + left
    return left + right


def brute_force(instance: Instance, cap: Optional[int] = None, prune: bool = True) -> SolveResult:
    cap = get_settings().brute_cap if cap is None else cap
    if instance.n > cap:
        raise RefusalError(f"Brute force is capped at n={cap}, instance has n={instance.n}")

    players = tuple(range(1, instance.n + 1))
    best_value: Optional[int] = None
    best_order: Optional[tuple[int, ...]] = None

    if prune:
        scored = instance if is_home_team_oblivious(instance) else symmetrize(instance)
        for order in _canonical_orders(players):
            value = evaluate(scored, Seeding(order)).total
            if best_value is not None and value < best_value:
                continue
            oriented = _orient(instance, order)
            if best_value is None or value > best_value or oriented < best_order:
                best_value, best_order = value, oriented
    else:
        if instance.n >= 8:
            logger.warning(f"Unpruned brute force over {math.factorial(instance.n)} seedings")
        for order in itertools.permutations(players):
            value = evaluate(instance, Seeding(order)).total
            if best_value is None or value > best_value:
                best_value, best_order = value, order

    logger.debug(f"Brute force optimum {best_value} at {list(best_order)}")
    return checked_result(instance, best_value, Seeding(best_order), Algorithm.BRUTE)


# ---------------------------------------------------------------------------
# Win-count DP
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DPKey:
    ell: int
    profile: SubtournamentProfile


class _Unreachable:
    """Marker for T[l, X] = minus infinity."""

    def __repr__(self) -> str:
        return "UNREACHABLE"


UNREACHABLE = _Unreachable()


def enumerate_profiles(n: int) -> Iterator[SubtournamentProfile]:
    rounds = num_rounds(n)
    ranges = [range(capacity(n, r) + 1) for r in range(rounds)]
    for x in itertools.product(*ranges):
        yield SubtournamentProfile(n, x)


def table_bound(n: int) -> int:
    """n times the number of capacity-respecting profiles."""
    return n * math.prod(capacity(n, r) + 1 for r in range(num_rounds(n)))


def dp_wincount(instance: Instance) -> SolveResult:
    v_prime = detect_win_count(instance)
    if v_prime is None:
        raise KindError("dp_wincount needs a win-count oriented value function")

    n = instance.n
    top = num_rounds(n)
    p = player_eval_from_wincount(v_prime, n)

    # T[key] = (value, argmax round) or UNREACHABLE
    table: dict[DPKey, object] = {}
    start = SubtournamentProfile.after_champion(n)
    table[DPKey(1, start)] = (p(n, top), None)
    frontier = {start}

    for ell in range(2, n + 1):
        player = n - ell + 1
        targets = set()
        for profile in frontier:
            for r, count in enumerate(profile.x):
                if count:
                    targets.add(close_subtournament(profile, r))
        for target in sorted(targets, key=lambda prof: prof.x):
            best = UNREACHABLE
            for r in range(top):
                prev = target.predecessor(r)
                if prev is None:
                    continue
                entry = table.get(DPKey(ell - 1, prev), UNREACHABLE)
                if entry is UNREACHABLE:
                    continue
                candidate = checked_add(entry[0], p(player, r))
                if best is UNREACHABLE or candidate > best[0]:
                    best = (candidate, r)
            table[DPKey(ell, target)] = best
        frontier = targets

    if len(table) > table_bound(n):
        raise AssertionError(f"DP table holds {len(table)} entries, bound is {table_bound(n)}")
    logger.debug(f"Win-count DP filled {len(table)} entries for n={n}")

    final = DPKey(n, SubtournamentProfile.empty(n))
    value, _ = table[final]

    # replay the argmax choices from the full profile back to the champion
    rounds_of = {n: top}
    profile = final.profile
    for ell in range(n, 1, -1):
        _, r = table[DPKey(ell, profile)]
        rounds_of[n - ell + 1] = r
        profile = profile.predecessor(r)

    builder = BracketBuilder(n)
    for player in range(n, 0, -1):
        slot = builder.find(rounds_of[player], player)
        builder.close(player, slot)

    return checked_result(instance, value, builder.seeding(), Algorithm.DP)
