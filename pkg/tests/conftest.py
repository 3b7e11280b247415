"""Shared fixtures and small exhaustive oracles."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from src.model.instance import Instance, Seeding
from src.model.values import GameValueFunction
from src.reductions.formula import Formula23, Literal
from src.settings.configs import Settings
from src.solvers.matching import make_tight_instance

SAMPLE16_SEEDING = (16, 15, 4, 2, 13, 9, 11, 5, 7, 6, 10, 8, 12, 14, 3, 1)
SAMPLE16_CHILDREN = {
    16: (14, 13, 4, 15),
    14: (10, 3, 12),
    13: (11, 9),
    4: (2,),
    10: (7, 8),
    7: (6,),
    11: (5,),
    3: (1,),
}


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def all_matchings(nodes: list[int]):
    """Every matching of the complete graph on *nodes* (as lists of pairs)."""
    if not nodes:
        yield []
        return
    first, rest = nodes[0], nodes[1:]
    yield from all_matchings(rest)
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1 :]
        for matching in all_matchings(remaining):
            yield [(first, other)] + matching


def min_vertex_cover_size(graph: nx.Graph) -> int:
    nodes = sorted(u for u in graph.nodes if graph.degree(u) > 0)
    for size in range(len(nodes) + 1):
        for subset in itertools.combinations(nodes, size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in graph.edges()):
                return size
    raise AssertionError("unreachable")


def is_monotone(v: dict[int, int], players) -> bool:
    ordered = sorted(players)
    return all(v[a] <= v[b] for a, b in zip(ordered, ordered[1:]))


def min_disagreement_size(v: dict[int, int]) -> int:
    players = sorted(v)
    for size in range(len(players) + 1):
        for removed in itertools.combinations(players, size):
            if is_monotone(v, [p for p in players if p not in removed]):
                return size
    raise AssertionError("unreachable")


def make_popularity(values: dict[int, int]) -> Instance:
    return Instance(n=len(values), values=GameValueFunction.popularity(values))


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def settings() -> Settings:
    return Settings(brute_cap=8, log_level="INFO", fpt_max_k=6, default_rng_seed=0)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def tight8() -> Instance:
    return make_tight_instance(8, 10)


@pytest.fixture
def tight8_optimal_seeding() -> Seeding:
    return Seeding((7, 1, 2, 3, 4, 5, 6, 8))


@pytest.fixture
def popularity4() -> Instance:
    """v_i = i on four players."""
    return make_popularity({1: 1, 2: 2, 3: 3, 4: 4})


@pytest.fixture
def phi() -> Formula23:
    """(x1 or x2) and (not x1 or x2)."""
    return Formula23(
        2,
        (
            (Literal(1, True), Literal(2, True)),
            (Literal(1, False), Literal(2, True)),
        ),
    )
