"""
Open-subtournament bookkeeping shared by the constructive solvers.

The DP reconstruction, both greedy algorithms and the disagreement FPT
algorithm all seed players strongest first, each player becoming the winner
of one open subtournament.  The player that opened a subtournament is the
one its winner eventually loses to, so it is both the restrictor (only
weaker players may win there) and the parent in the execution tree.

Open subtournaments live in a ``SortedList`` ordered by
(rounds, restrictor strength, slot id), which answers "weakest restrictor
stronger than i among r-round blocks" with one bisection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from sortedcontainers import SortedList

from src.brackets.profile import SubtournamentProfile, close_subtournament
from src.brackets.tree import BinomialArborescence, seeding_from_ba
from src.model.errors import IllegalTransitionError, ValidationError
from src.model.instance import Seeding
from src.model.values import num_rounds


@dataclass(frozen=True)
class OpenSubtournament:
    rounds: int
    restrictor: Optional[int]
    slot_id: int


class BracketBuilder:
    """
    Incrementally assemble a binomial arborescence from winner assignments.

    Example
    -------
    ::

        builder = BracketBuilder(4)
        builder.close(4, builder.largest())   # champion takes the 2-round root
        builder.close(3, builder.largest())   # 3 wins the open 1-round block
        ...
        seeding = builder.seeding()
    """

    def __init__(self, n: int) -> None:
        self.n = n
        self.rounds = num_rounds(n)
        self.logger = logging.getLogger(self.__class__.__name__)

        self._slots: dict[int, OpenSubtournament] = {}
        self._index: SortedList = SortedList()
        self._next_id = 0
        self._children: dict[int, list[tuple[int, int]]] = {}
        self._root: Optional[int] = None
        self._profile: Optional[SubtournamentProfile] = None
        self._open(self.rounds, None)

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    def _strength(self, restrictor: Optional[int]) -> int:
        # the whole bracket is unrestricted
        return self.n + 1 if restrictor is None else restrictor

    def _open(self, rounds: int, restrictor: Optional[int]) -> None:
        slot = OpenSubtournament(rounds, restrictor, self._next_id)
        self._next_id += 1
        self._slots[slot.slot_id] = slot
        self._index.add((rounds, self._strength(restrictor), slot.slot_id))

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def profile(self) -> Optional[SubtournamentProfile]:
        """Profile of open blocks below the root; ``None`` before the champion is placed."""
        return self._profile

    def open_slots(self) -> list[OpenSubtournament]:
        return [self._slots[entry[2]] for entry in self._index]

    def is_complete(self) -> bool:
        return not self._slots

    def find(self, rounds: int, player: int) -> Optional[OpenSubtournament]:
        """r-round block with the weakest restrictor stronger than *player* (lowest id on ties)."""
        pos = self._index.bisect_left((rounds, player + 1, -1))
        if pos < len(self._index):
            r, _, slot_id = self._index[pos]
            if r == rounds:
                return self._slots[slot_id]
        return None

    def largest(self, player: Optional[int] = None) -> Optional[OpenSubtournament]:
        """Open block with the most rounds that *player* may win."""
        player = 0 if player is None else player
        for rounds in range(self.rounds, -1, -1):
            slot = self.find(rounds, player)
            if slot is not None:
                return slot
        return None

    def smallest(self, player: Optional[int] = None) -> Optional[OpenSubtournament]:
        """Open block with the fewest rounds that *player* may win."""
        player = 0 if player is None else player
        for rounds in range(self.rounds + 1):
            slot = self.find(rounds, player)
            if slot is not None:
                return slot
        return None

    def max_open_rounds(self) -> Optional[int]:
        return self._index[-1][0] if self._index else None

    # ------------------------------------------------------------------
    # Mutation
    # ------------------------------------------------------------------

    def close(self, player: int, slot: OpenSubtournament) -> int:
        """Seed *player* as winner of *slot*; returns the slot's round count."""
        if self._slots.get(slot.slot_id) != slot:
            raise IllegalTransitionError(f"Subtournament {slot} is not open")
        if slot.restrictor is not None and player >= slot.restrictor:
            raise IllegalTransitionError(f"Player {player} cannot win a block restricted by {slot.restrictor}")
        if player in self._children:
            raise IllegalTransitionError(f"Player {player} is already seeded")

        del self._slots[slot.slot_id]
        self._index.remove((slot.rounds, self._strength(slot.restrictor), slot.slot_id))

        self._children[player] = []
        if slot.restrictor is None:
            self._root = player
            self._profile = SubtournamentProfile.after_champion(self.n)
        else:
            self._children[slot.restrictor].append((slot.rounds, player))
            self._profile = close_subtournament(self._profile, slot.rounds)

        for rounds in range(slot.rounds - 1, -1, -1):
            self._open(rounds, player)
        self.logger.debug(f"Player {player} closes a {slot.rounds}-round block (restrictor {slot.restrictor})")
        return slot.rounds

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------

    def finish(self) -> BinomialArborescence:
        if not self.is_complete() or self._root is None:
            raise ValidationError(f"{len(self._slots)} subtournaments are still open")
        assert self._profile is None or self._profile.is_empty()
        children = {
            u: tuple(kid for _, kid in sorted(kids, reverse=True))
            for u, kids in self._children.items()
        }
        return BinomialArborescence(root=self._root, children=children)

    def seeding(self) -> Seeding:
        return seeding_from_ba(self.finish())
