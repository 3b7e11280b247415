"""
Moving between assignments and seedings of a reduction instance.

seeding_from_assignment
    Variable x_i meets its falsified literal player in round one; the
    satisfying literal player heads an 8-position block in the clause
    region, where each satisfied clause waits at the slot it reaches in the
    round matching its occurrence number.  Construction 2 additionally puts
    d_i, d~_i, d^_i next to x_i.  Everyone else fills the free positions,
    strongest into the earliest, so unsatisfied clauses land in the variable
    region and never sit next to a satisfied clause.

extract_assignment
    Reads an assignment off any seeding such that the number of satisfied
    clauses is at least the seeding's value minus the number of variables.
"""

from __future__ import annotations

import logging
from typing import Mapping, Optional

from src.model.errors import ValidationError
from src.model.instance import EvaluationReport, Seeding, evaluate
from src.reductions.constructions import ReductionLayout, RoleKind

logger = logging.getLogger(__name__)


def _check_which(layout: ReductionLayout, which: Optional[int]) -> int:
    which = layout.construction if which is None else which
    if which not in (1, 2) or which != layout.construction:
        raise ValidationError(f"Layout was built by construction {layout.construction}, not {which}")
    return which


# ---------------------------------------------------------------------------
# Assignment -> seeding
# ---------------------------------------------------------------------------


def seeding_from_assignment(
    layout: ReductionLayout, assignment: Mapping[int, bool], which: Optional[int] = None
) -> Seeding:
    which = _check_which(layout, which)
    formula = layout.formula
    n = formula.num_vars
    missing = [i for i in range(1, n + 1) if i not in assignment]
    if missing:
        raise ValidationError(f"Assignment misses variables {missing}")

    total = layout.instance.n
    slots: dict[int, int] = {}

    def place(position: int, player: int) -> None:
        if not 1 <= position <= total or position in slots:
            raise AssertionError(f"Seed position {position} is out of range or already taken")
        slots[position] = player

    for i in range(1, n + 1):
        value = bool(assignment[i])
        home = 2 * i - 1 if which == 1 else 8 * i - 7
        place(home, layout.variable(i))
        place(home + 1, layout.literal(i, not value))
        place(8 * n + 8 * i - 7, layout.literal(i, value))
        if which == 2:
            place(8 * i - 5, layout.player(RoleKind.SPECIAL, i))
            place(8 * i - 4, layout.player(RoleKind.SPECIAL_TILDE, i))
            place(8 * i - 3, layout.player(RoleKind.SPECIAL_HAT, i))

    for c, clause in enumerate(formula.clauses):
        for slot, lit in enumerate(clause):
            if lit.positive == bool(assignment[lit.var]):
                j = formula.occurrence_number(c, slot)
                place(8 * n + 8 * lit.var + 2 ** (j - 1) - 7, layout.clause(c))
                break

    placed = set(slots.values())
    rest = sorted((p for p in range(1, total + 1) if p not in placed), reverse=True)
    free = [pos for pos in range(1, total + 1) if pos not in slots]
    for position, player in zip(free, rest):
        slots[position] = player
    return Seeding(tuple(slots[pos] for pos in range(1, total + 1)))


# ---------------------------------------------------------------------------
# Seeding -> assignment
# ---------------------------------------------------------------------------


def _clause_wins(layout: ReductionLayout, report: EvaluationReport, literal: int, unit: int) -> int:
    """Number of value-``unit`` games *literal* plays against clause players."""
    count = 0
    for game in report.opponents(literal):
        other = game.loser if game.winner == literal else game.winner
        if layout.roles[other].kind is RoleKind.CLAUSE and game.value == unit:
            count += 1
    return count


def _meets(report: EvaluationReport, a: int, b: int) -> bool:
    return any({g.winner, g.loser} == {a, b} for g in report.games)


def _first_round_opponent(seeding: Seeding, player: int) -> int:
    pos = seeding.position_of(player) - 1
    return seeding.order[pos ^ 1]


def repair_cheating(layout: ReductionLayout, seeding: Seeding) -> tuple[Seeding, list[int]]:
    """
    Undo cheating variables of a Construction 1 seeding.

    A variable cheats when both of its literal players win a value-1 game
    against a clause player.  Its variable player then meets some d in
    round one; the literal player with a single clause game swaps positions
    with d.  A swap is kept only if the tournament value does not drop.
    Returns the final seeding and the value after every kept swap, starting
    with the initial value.
    """
    _check_which(layout, 1)
    instance = layout.instance
    value = evaluate(instance, seeding).total
    history = [value]
    for i in range(1, layout.num_vars + 1):
        report = evaluate(instance, seeding)
        t_player, f_player = layout.literal(i, True), layout.literal(i, False)
        t_games = _clause_wins(layout, report, t_player, 1)
        f_games = _clause_wins(layout, report, f_player, 1)
        if not (t_games and f_games):
            continue
        mover = t_player if t_games == 1 else f_player
        d = _first_round_opponent(seeding, layout.variable(i))
        candidate = seeding.swapped(mover, d)
        new_value = evaluate(instance, candidate).total
        if new_value >= value:
            logger.debug(f"Repaired x{i}: swapped {mover} with {d}, value {value} -> {new_value}")
            seeding, value = candidate, new_value
            history.append(value)
        else:
            logger.debug(f"Swap for x{i} would lower the value ({value} -> {new_value}); left as is")
    return seeding, history


def _extract_construction1(layout: ReductionLayout, seeding: Seeding) -> dict[int, bool]:
    seeding, _ = repair_cheating(layout, seeding)
    report = evaluate(layout.instance, seeding)
    assignment: dict[int, bool] = {}
    for i in range(1, layout.num_vars + 1):
        t_games = _clause_wins(layout, report, layout.literal(i, True), 1)
        f_games = _clause_wins(layout, report, layout.literal(i, False), 1)
        if t_games and f_games:
            # still cheating: keep the side with more clause games
            assignment[i] = t_games >= f_games
        else:
            assignment[i] = t_games > 0
    return assignment


def _extract_construction2(layout: ReductionLayout, seeding: Seeding) -> dict[int, bool]:
    report = evaluate(layout.base, seeding)
    assignment: dict[int, bool] = {}
    for i in range(1, layout.num_vars + 1):
        x = layout.variable(i)
        t_player, f_player = layout.literal(i, True), layout.literal(i, False)
        t_games = _clause_wins(layout, report, t_player, 1)
        f_games = _clause_wins(layout, report, f_player, 1)
        t_meets_x, f_meets_x = _meets(report, t_player, x), _meets(report, f_player, x)
        cheating = (t_games and f_games) or (t_meets_x and f_meets_x)
        if not cheating:
            assignment[i] = t_games > 0
        elif not t_meets_x and not f_meets_x:
            assignment[i] = t_games > 1
        else:
            assignment[i] = True
    return assignment


def extract_assignment(layout: ReductionLayout, seeding: Seeding, which: Optional[int] = None) -> dict[int, bool]:
    which = _check_which(layout, which)
    if len(seeding) != layout.instance.n:
        raise ValidationError(f"Seeding has {len(seeding)} players, layout has {layout.instance.n}")
    if which == 1:
        return _extract_construction1(layout, seeding)
    return _extract_construction2(layout, seeding)
