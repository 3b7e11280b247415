"""Shared solver result types."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from src.model.instance import Instance, Seeding, evaluate


class Algorithm(str, Enum):
    BRUTE = "brute"
    DP = "dp"
    GREEDY2 = "greedy2"
    AGREE = "agree"
    FPT = "fpt"
    MATCHING = "matching"
    AUTO = "auto"


@dataclass(frozen=True)
class SolveResult:
    value: int
    seeding: Seeding
    algorithm: Algorithm

    def verify(self, instance: Instance) -> bool:
        """True when the witness seeding really evaluates to ``value``."""
        return evaluate(instance, self.seeding).total == self.value


def checked_result(instance: Instance, value: int, seeding: Seeding, algorithm: Algorithm) -> SolveResult:
    """Build a result, failing loudly if the witness disagrees with the value."""
    result = SolveResult(value=value, seeding=seeding, algorithm=algorithm)
    if not result.verify(instance):
        actual = evaluate(instance, seeding).total
        raise AssertionError(f"{algorithm.value}: witness evaluates to {actual}, solver reported {value}")
    return result
