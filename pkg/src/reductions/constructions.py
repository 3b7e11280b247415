"""
Tournament instances built from Max (2,3)-SAT formulas.

Both constructions use n' = the smallest integer with 16n <= 2^n' (n the
number of variables) so the bracket has room for a 8n-position variable
region and a 8n-position clause region, padded by dummy players.

Construction 1 (round dependent, values {0, 1})
    Per variable players x > x^T > x^F, one player per clause, then
    13n + p - m dummies.  v(x, x^T, 1) = v(x, x^F, 1) = 1, and for the j-th
    appearance of variable x in clause c, v(c, x^T, j) = 1 when the literal
    is positive, v(c, x^F, j) = 1 otherwise.

Construction 2 (round oblivious, values {0, 1, -5})
    Adds special players d^ > d > d~ per variable (strongest of all) and uses
    10n + p - m dummies.  v(x, x^T) = v(x, x^F) = 1, v(c, literal) = 1,
    v(d, d^) = v(d, d~) = v(d, x) = 0 and every other game of x or d is -5.
    The non-negative variant adds 6 to every value.

All values are written in both argument orders.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional

from src.model.instance import Instance, shift
from src.model.values import GameValueFunction
from src.reductions.formula import Formula23

logger = logging.getLogger(__name__)

NONNEG_SHIFT = 6


class RoleKind(str, Enum):
    VARIABLE = "variable"
    TRUE_LITERAL = "true_literal"
    FALSE_LITERAL = "false_literal"
    CLAUSE = "clause"
    SPECIAL_HAT = "special_hat"
    SPECIAL = "special"
    SPECIAL_TILDE = "special_tilde"
    DUMMY = "dummy"


@dataclass(frozen=True)
class Role:
    kind: RoleKind
    var: Optional[int] = None
    index: Optional[int] = None


@dataclass(frozen=True)
class ReductionLayout:
    """
    Which player plays which part in a reduction instance.

    Parameters
    ----------
    construction : int
        1 or 2.
    formula : Formula23
        The (preprocessed) formula the instance encodes.
    instance : Instance
        The emitted instance (shifted when built with ``nonneg``).
    base : Instance
        The instance before any non-negativity shift.
    nprime, p : int
        2^nprime players in total; p = 2^nprime - 16n padding.
    roles : Mapping[int, Role]
        Role of every player id.
    shift : int
        Constant added to every game value of ``base``.
    """

    construction: int
    formula: Formula23
    instance: Instance
    base: Instance
    nprime: int
    p: int
    roles: Mapping[int, Role]
    shift: int = 0
    _by_role: Mapping[tuple[RoleKind, Optional[int], Optional[int]], int] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        by_role = {(role.kind, role.var, role.index): player for player, role in self.roles.items()}
        object.__setattr__(self, "roles", MappingProxyType(dict(self.roles)))
        object.__setattr__(self, "_by_role", MappingProxyType(by_role))

    @property
    def num_vars(self) -> int:
        return self.formula.num_vars

    def player(self, kind: RoleKind, var: Optional[int] = None, index: Optional[int] = None) -> int:
        return self._by_role[(kind, var, index)]

    def variable(self, i: int) -> int:
        return self.player(RoleKind.VARIABLE, i)

    def literal(self, i: int, positive: bool) -> int:
        return self.player(RoleKind.TRUE_LITERAL if positive else RoleKind.FALSE_LITERAL, i)

    def clause(self, c: int) -> int:
        """Player of the c-th clause (0-based clause index)."""
        return self.player(RoleKind.CLAUSE, None, c)

    def count(self, kind: RoleKind) -> int:
        return sum(1 for role in self.roles.values() if role.kind is kind)

    @property
    def num_dummies(self) -> int:
        return self.count(RoleKind.DUMMY)


def smallest_nprime(num_vars: int) -> int:
    nprime = 0
    while 2**nprime < 16 * num_vars:
        nprime += 1
    return nprime


def _assign_ids(chain: list[Role]) -> dict[int, Role]:
    """Strongest role first gets the largest id."""
    total = len(chain)
    return {total - pos: role for pos, role in enumerate(chain)}


def _variable_chain(formula: Formula23) -> list[Role]:
    chain: list[Role] = []
    for i in range(1, formula.num_vars + 1):
        chain += [Role(RoleKind.VARIABLE, i), Role(RoleKind.TRUE_LITERAL, i), Role(RoleKind.FALSE_LITERAL, i)]
    chain += [Role(RoleKind.CLAUSE, None, c) for c in range(formula.num_clauses)]
    return chain


def _both(table: dict, a: int, b: int, value: int, *rest: int) -> None:
    table[(a, b, *rest)] = value
    table[(b, a, *rest)] = value


def construct1(formula: Formula23, clauses_target: Optional[int] = None) -> ReductionLayout:
    """Round-dependent reduction; *clauses_target* k sets the decision target k + n."""
    n, m = formula.num_vars, formula.num_clauses
    nprime = smallest_nprime(n)
    p = 2**nprime - 16 * n
    dummies = 13 * n + p - m
    chain = _variable_chain(formula) + [Role(RoleKind.DUMMY, None, k) for k in range(1, dummies + 1)]
    roles = _assign_ids(chain)
    ids = {(role.kind, role.var, role.index): player for player, role in roles.items()}

    table: dict[tuple[int, int, int], int] = {}
    for i in range(1, n + 1):
        x = ids[(RoleKind.VARIABLE, i, None)]
        _both(table, x, ids[(RoleKind.TRUE_LITERAL, i, None)], 1, 1)
        _both(table, x, ids[(RoleKind.FALSE_LITERAL, i, None)], 1, 1)
        for j, (c, slot) in enumerate(formula.occurrences(i), 1):
            lit = formula.clauses[c][slot]
            kind = RoleKind.TRUE_LITERAL if lit.positive else RoleKind.FALSE_LITERAL
            _both(table, ids[(RoleKind.CLAUSE, None, c)], ids[(kind, i, None)], 1, j)

    target = None if clauses_target is None else clauses_target + n
    instance = Instance(n=2**nprime, values=GameValueFunction.general(table), target=target)
    logger.info(f"Construction 1: {n} variables, {m} clauses -> {instance.n} players ({dummies} dummies)")
    return ReductionLayout(1, formula, instance, instance, nprime, p, roles)


def construct2(formula: Formula23, nonneg: bool = False, clauses_target: Optional[int] = None) -> ReductionLayout:
    """
    Round-oblivious reduction.

    With *clauses_target* k the instance carries the decision target k + n
    (moved by (2^n' - 1) * 6 when *nonneg* shifts the values).
    """
    n, m = formula.num_vars, formula.num_clauses
    nprime = smallest_nprime(n)
    p = 2**nprime - 16 * n
    dummies = 10 * n + p - m
    specials: list[Role] = []
    for i in range(1, n + 1):
        specials += [Role(RoleKind.SPECIAL_HAT, i), Role(RoleKind.SPECIAL, i), Role(RoleKind.SPECIAL_TILDE, i)]
    chain = specials + _variable_chain(formula) + [Role(RoleKind.DUMMY, None, k) for k in range(1, dummies + 1)]
    roles = _assign_ids(chain)
    ids = {(role.kind, role.var, role.index): player for player, role in roles.items()}
    players = range(1, len(chain) + 1)

    table: dict[tuple[int, int], int] = {}
    # penalties first; the explicit 0/1 entries below override them
    for i in range(1, n + 1):
        for hub in (ids[(RoleKind.SPECIAL, i, None)], ids[(RoleKind.VARIABLE, i, None)]):
            for other in players:
                if other != hub:
                    _both(table, hub, other, -5)
    for i in range(1, n + 1):
        x = ids[(RoleKind.VARIABLE, i, None)]
        d = ids[(RoleKind.SPECIAL, i, None)]
        _both(table, x, ids[(RoleKind.TRUE_LITERAL, i, None)], 1)
        _both(table, x, ids[(RoleKind.FALSE_LITERAL, i, None)], 1)
        _both(table, d, ids[(RoleKind.SPECIAL_HAT, i, None)], 0)
        _both(table, d, ids[(RoleKind.SPECIAL_TILDE, i, None)], 0)
        _both(table, d, x, 0)
    for c, clause in enumerate(formula.clauses):
        for lit in clause:
            kind = RoleKind.TRUE_LITERAL if lit.positive else RoleKind.FALSE_LITERAL
            _both(table, ids[(RoleKind.CLAUSE, None, c)], ids[(kind, lit.var, None)], 1)

    target = None if clauses_target is None else clauses_target + n
    base = Instance(n=2**nprime, values=GameValueFunction.round_oblivious(table), target=target)
    instance = shift(base, NONNEG_SHIFT) if nonneg else base
    logger.info(
        f"Construction 2: {n} variables, {m} clauses -> {base.n} players ({dummies} dummies"
        f"{', shifted by +6' if nonneg else ''})"
    )
    return ReductionLayout(2, formula, instance, base, nprime, p, roles, NONNEG_SHIFT if nonneg else 0)
