"""
Influential sets.

A set F of players is influential when every pair of players whose game can
carry a nonzero value (in either order, in some round) has an endpoint in F.
That is a vertex cover of the conflict graph, found here by bounded search
tree branching with iterative deepening on the cover size.
"""

from __future__ import annotations

import logging
from typing import Optional

import networkx as nx

from src.model.instance import Instance
from src.model.values import ValueKind

logger = logging.getLogger(__name__)


def conflict_graph(instance: Instance) -> nx.Graph:
    """Players 1..n with an edge for every pair that has a nonzero game value."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, instance.n + 1))
    values = instance.values
    if values.kind in (ValueKind.GENERAL, ValueKind.ROUND_OBLIVIOUS):
        graph.add_edges_from((key[0], key[1]) for key in values.table)
    else:
        # a nonzero winner value touches every weaker player
        winners = {key[0] for key in values.table if key[0] >= 2}
        graph.add_edges_from((i, j) for i in winners for j in range(1, i))
    return graph


def _branch(graph: nx.Graph, budget: int) -> Optional[set[int]]:
    if graph.number_of_edges() == 0:
        return set()
    if budget == 0:
        return None

    # a vertex with more neighbours than the budget must be taken
    heavy = sorted(u for u, degree in graph.degree() if degree > budget)
    if heavy:
        u = heavy[0]
        rest = graph.copy()
        rest.remove_node(u)
        cover = _branch(rest, budget - 1)
        return None if cover is None else cover | {u}

    u, v = min(tuple(sorted(edge)) for edge in graph.edges())
    for pick in (u, v):
        rest = graph.copy()
        rest.remove_node(pick)
        cover = _branch(rest, budget - 1)
        if cover is not None:
            return cover | {pick}
    return None


def compute_influential_set(instance: Instance) -> set[int]:
    graph = conflict_graph(instance)
    graph.remove_nodes_from([u for u in list(graph.nodes) if graph.degree(u) == 0])
    k = 0
    while True:
        cover = _branch(graph, k)
        if cover is not None:
            logger.debug(f"Influential set of size {k}: {sorted(cover)}")
            return cover
        k += 1
