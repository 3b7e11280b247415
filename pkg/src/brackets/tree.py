"""
Execution trees and binomial arborescences.

The execution tree of a seeding has an edge winner -> loser for every game,
rooted at the champion.  Its shape is always the binomial arborescence B_n:
a node whose subtree holds 2^k players has k children, with subtree sizes
2^(k-1), ..., 2, 1 (the player it beat in the final of its block down to
the player it beat in round one).  Conversely every such tree whose parents
are stronger than their children is the execution tree of some seeding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from src.model.errors import ValidationError
from src.model.instance import Instance, Seeding
from src.model.values import is_power_of_two

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinomialArborescence:
    """
    Rooted tree over players 1..n.

    ``children[u]`` lists the players u knocked out, ordered by subtree size
    descending; every player has an entry (leaves map to an empty tuple).
    """

    root: int
    children: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        frozen = {int(u): tuple(kids) for u, kids in self.children.items()}
        for kids in list(frozen.values()):
            for kid in kids:
                frozen.setdefault(kid, ())
        frozen.setdefault(self.root, ())
        object.__setattr__(self, "children", MappingProxyType(dict(sorted(frozen.items()))))

    @property
    def n(self) -> int:
        return len(self.children)

    def subtree_size(self, u: int) -> int:
        size = 1
        stack = list(self.children[u])
        while stack:
            node = stack.pop()
            size += 1
            stack.extend(self.children[node])
        return size

    def win_counts(self) -> dict[int, int]:
        return {u: len(kids) for u, kids in self.children.items()}

    def parent_map(self) -> dict[int, int]:
        return {kid: u for u, kids in self.children.items() for kid in kids}

    def validate(self) -> None:
        """Raise ValidationError unless this is B_n with stronger parents."""
        n = self.n
        if not is_power_of_two(n) or set(self.children) != set(range(1, n + 1)):
            raise ValidationError(f"Tree nodes must be exactly 1..n for a power of two n, got {sorted(self.children)}")
        if self.root != n:
            raise ValidationError(f"Root must be the strongest player {n}, got {self.root}")

        seen = {self.root}
        stack = [self.root]
        while stack:
            u = stack.pop()
            kids = self.children[u]
            k = len(kids)
            for t, kid in enumerate(kids):
                if kid in seen:
                    raise ValidationError(f"Player {kid} appears twice in the tree")
                if kid >= u:
                    raise ValidationError(f"Player {u} cannot have beaten stronger player {kid}")
                expected = 2 ** (k - 1 - t)
                if self.subtree_size(kid) != expected:
                    raise ValidationError(
                        f"Child {kid} of {u} has subtree size {self.subtree_size(kid)}, expected {expected}"
                    )
                seen.add(kid)
                stack.append(kid)
        if len(seen) != n:
            raise ValidationError(f"Tree reaches {len(seen)} of {n} players")

    def to_seeding(self) -> Seeding:
        return seeding_from_ba(self)


def tree_of(seeding: Seeding) -> BinomialArborescence:
    """Execution tree of *seeding*; the value function plays no part."""
    n = len(seeding)
    beaten: dict[int, list[int]] = {player: [] for player in seeding}
    alive = list(seeding.order)
    while len(alive) > 1:
        survivors = []
        for k in range(0, len(alive), 2):
            winner, loser = max(alive[k], alive[k + 1]), min(alive[k], alive[k + 1])
            beaten[winner].append(loser)
            survivors.append(winner)
        alive = survivors
    # games were recorded in round order, so reversing gives size-descending order
    children = {u: tuple(reversed(kids)) for u, kids in beaten.items()}
    return BinomialArborescence(root=n, children=children)


def execution_tree_from_seeding(instance: Instance, seeding: Seeding) -> BinomialArborescence:
    if len(seeding) != instance.n:
        raise ValidationError(f"Seeding has {len(seeding)} players, instance has {instance.n}")
    return tree_of(seeding)


def seeding_from_ba(ba: BinomialArborescence) -> Seeding:
    """
    Canonical seeding whose execution tree is *ba*.

    A node owns a block of 2^k positions and sits at its first position;
    the child with subtree size 2^s takes the block at offset 2^s.
    """
    ba.validate()
    order = [0] * ba.n
    stack = [(ba.root, 0, ba.n)]
    while stack:
        node, start, size = stack.pop()
        order[start] = node
        for kid in ba.children[node]:
            size //= 2
            stack.append((kid, start + size, size))
    return Seeding(tuple(order))
