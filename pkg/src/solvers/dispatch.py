"""Algorithm dispatch, including the ``auto`` choice of the most specific solver."""

from __future__ import annotations

import logging
from typing import Callable, Optional

from src.model.errors import KindError
from src.model.instance import Instance, detect_win_count
from src.model.values import ValueKind
from src.settings.configs import Settings, get_settings
from src.solvers.base import Algorithm, SolveResult
from src.solvers.disagreement import compute_disagreement_set, fpt_disagreement
from src.solvers.exact import brute_force, dp_wincount
from src.solvers.greedy import PopularityInstance, greedy_agree_order, greedy_two_values
from src.solvers.matching import approx_matching

logger = logging.getLogger(__name__)


def _popularity(instance: Instance) -> PopularityInstance:
    pop = PopularityInstance.try_from_instance(instance)
    if pop is None:
        raise KindError(f"Algorithm needs non-negative popularity values, instance is {instance.kind.value}")
    return pop


def choose_algorithm(instance: Instance, settings: Optional[Settings] = None) -> Algorithm:
    """Most specific applicable solver; raises KindError when none applies."""
    settings = settings or get_settings()
    pop = PopularityInstance.try_from_instance(instance)
    if pop is not None:
        if pop.is_monotone():
            return Algorithm.AGREE
        if len(pop.distinct_values()) <= 2:
            return Algorithm.GREEDY2
        if compute_disagreement_set(pop).k <= settings.fpt_max_k:
            return Algorithm.FPT
    if detect_win_count(instance) is not None:
        return Algorithm.DP
    if instance.n <= settings.brute_cap:
        return Algorithm.BRUTE
    if instance.kind in (ValueKind.ROUND_OBLIVIOUS, ValueKind.POPULARITY):
        return Algorithm.MATCHING
    raise KindError(
        f"No solver applies to a {instance.kind.value} instance with n={instance.n} "
        f"(brute force cap {settings.brute_cap})"
    )


def solve(instance: Instance, algorithm: Algorithm = Algorithm.AUTO, settings: Optional[Settings] = None) -> SolveResult:
    settings = settings or get_settings()
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.AUTO:
        algorithm = choose_algorithm(instance, settings)
        logger.info(f"auto selected {algorithm.value} for n={instance.n} ({instance.kind.value})")

    runners: dict[Algorithm, Callable[[], SolveResult]] = {
        Algorithm.BRUTE: lambda: brute_force(instance, cap=settings.brute_cap),
        Algorithm.DP: lambda: dp_wincount(instance),
        Algorithm.GREEDY2: lambda: greedy_two_values(_popularity(instance)),
        Algorithm.AGREE: lambda: greedy_agree_order(_popularity(instance)),
        Algorithm.FPT: lambda: fpt_disagreement(_popularity(instance)),
        Algorithm.MATCHING: lambda: approx_matching(instance),
    }
    return runners[algorithm]()
