"""
Subtournament profiles.

While players are seeded strongest first, the bracket is a set of open
subtournaments: blocks whose winner is not yet chosen.  The profile counts
them by round count, x[r] being the number of open blocks of 2^r players
(r = 0 is a single free position).  Seeding a player as the winner of an
r-round block closes it and opens one block for every r' < r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from src.model.errors import IllegalTransitionError, ValidationError
from src.model.values import num_rounds


def capacity(n: int, r: int) -> int:
    """Most r-round blocks that can be open at once in an n-player bracket."""
    return n >> (r + 1)


@dataclass(frozen=True)
class SubtournamentProfile:
    n: int
    x: tuple[int, ...]

    def __post_init__(self) -> None:
        x = tuple(self.x)
        object.__setattr__(self, "x", x)
        rounds = num_rounds(self.n)
        if len(x) != rounds:
            raise ValidationError(f"Profile for n={self.n} needs {rounds} entries, got {len(x)}")
        for r, count in enumerate(x):
            if not 0 <= count <= capacity(self.n, r):
                raise ValidationError(f"x[{r}]={count} outside 0..{capacity(self.n, r)} for n={self.n}")

    @classmethod
    def after_champion(cls, n: int) -> "SubtournamentProfile":
        """Profile once the strongest player has closed the whole bracket."""
        return cls(n, (1,) * num_rounds(n))

    @classmethod
    def empty(cls, n: int) -> "SubtournamentProfile":
        return cls(n, (0,) * num_rounds(n))

    def is_empty(self) -> bool:
        return not any(self.x)

    def predecessor(self, r: int) -> Optional["SubtournamentProfile"]:
        """The profile that closing an r-round block turns into this one, if any."""
        prev = list(self.x)
        for smaller in range(r):
            prev[smaller] -= 1
        prev[r] += 1
        for s, count in enumerate(prev):
            if not 0 <= count <= capacity(self.n, s):
                return None
        return SubtournamentProfile(self.n, tuple(prev))


def close_subtournament(profile: SubtournamentProfile, r: int) -> SubtournamentProfile:
    if not 0 <= r < len(profile.x) or profile.x[r] == 0:
        raise IllegalTransitionError(f"No open {r}-round subtournament in profile {profile.x}")
    x = list(profile.x)
    x[r] -= 1
    for smaller in range(r):
        x[smaller] += 1
        if x[smaller] > capacity(profile.n, smaller):
            raise IllegalTransitionError(f"Closing a {r}-round block overflows x[{smaller}] in {profile.x}")
    return SubtournamentProfile(profile.n, tuple(x))
