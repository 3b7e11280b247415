"""
Matching-based approximation for round-oblivious value functions.

Every first-round pairing is a matching of the players, so a maximum-weight
matching (weight of {i, j} = the better of v(i, j) and v(j, i)) bounds the
value of any single round.  Seeding the matched pairs next to each other
collects that weight in round one; with non-negative values the remaining
rounds can only add, giving at least OPT / log2(n).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import networkx as nx

from src.model.errors import KindError, ValidationError
from src.model.instance import Instance, Seeding, evaluate
from src.model.values import GameValueFunction, ValueKind, is_power_of_two
from src.solvers.base import Algorithm, SolveResult, checked_result

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class WeightedPairGraph:
    """Complete graph on 1..n; ``weight`` holds the nonzero weights keyed by (smaller, larger)."""

    n: int
    weight: Mapping[Pair, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", MappingProxyType(dict(self.weight)))

    @classmethod
    def from_instance(cls, instance: Instance) -> "WeightedPairGraph":
        if instance.kind not in (ValueKind.ROUND_OBLIVIOUS, ValueKind.POPULARITY):
            raise KindError(f"Matching approximation needs a round-oblivious function, got {instance.kind.value}")
        weights: dict[Pair, int] = {}
        for i in range(1, instance.n + 1):
            for j in range(i + 1, instance.n + 1):
                w = max(instance.value(i, j, 1), instance.value(j, i, 1))
                if w != 0:
                    weights[(i, j)] = w
        return cls(instance.n, weights)

    def w(self, i: int, j: int) -> int:
        return self.weight.get((min(i, j), max(i, j)), 0)


def max_weight_matching(graph: WeightedPairGraph) -> set[Pair]:
    """Exact maximum-weight matching; non-positive edges are never needed."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(1, graph.n + 1))
    for (i, j), w in sorted(graph.weight.items()):
        if w > 0:
            nx_graph.add_edge(i, j, weight=w)
    matching = nx.max_weight_matching(nx_graph, maxcardinality=False, weight="weight")
    return {(min(u, v), max(u, v)) for u, v in matching}


def matching_weight(graph: WeightedPairGraph, matching: set[Pair]) -> int:
    return sum(graph.w(i, j) for i, j in matching)


def approx_matching(instance: Instance) -> SolveResult:
    graph = WeightedPairGraph.from_instance(instance)
    if any(value < 0 for value in instance.values.table.values()):
        logger.warning("Negative game values: the 1/log2(n) guarantee does not apply")

    matching = max_weight_matching(graph)
    order: list[int] = []
    for i, j in sorted(matching):
        # home side first when it is worth more
        if instance.value(j, i, 1) > instance.value(i, j, 1):
            order.extend((j, i))
        else:
            order.extend((i, j))
    matched = set(order)
    order.extend(p for p in range(1, instance.n + 1) if p not in matched)

    seeding = Seeding(tuple(order))
    value = evaluate(instance, seeding).total
    logger.debug(f"Matching weight {matching_weight(graph, matching)}, seeding value {value}")
    return checked_result(instance, value, seeding, Algorithm.MATCHING)


def make_tight_instance(n: int, scale: int) -> Instance:
    """Star around player n-1: worth *scale* against the weaker players, scale+1 against n."""
    if not is_power_of_two(n) or n < 4:
        raise ValidationError(f"Tight instances need a power of two n >= 4, got {n}")
    if scale < 2:
        raise ValidationError(f"scale must be at least 2, got {scale}")
    hub = n - 1
    table: dict[Pair, int] = {}
    for j in range(1, n - 1):
        table[(hub, j)] = table[(j, hub)] = scale
    table[(hub, n)] = table[(n, hub)] = scale + 1
    return Instance(n=n, values=GameValueFunction.round_oblivious(table))
