import random

import pytest

from src.bench.families import random_instance
from src.model.errors import KindError, ValidationError
from src.model.instance import Instance, evaluate
from src.model.values import GameValueFunction, ValueKind
from src.solvers.base import Algorithm
from src.solvers.exact import brute_force
from src.solvers.matching import (
    WeightedPairGraph,
    approx_matching,
    make_tight_instance,
    matching_weight,
    max_weight_matching,
)
from tests.conftest import all_matchings


def test_two_vertex_matching():
    instance = Instance(n=2, values=GameValueFunction.round_oblivious({(1, 2): 5}))
    graph = WeightedPairGraph.from_instance(instance)
    matching = max_weight_matching(graph)
    assert matching == {(1, 2)}
    assert matching_weight(graph, matching) == 5
    result = approx_matching(instance)
    assert result.value == 5
    assert result.seeding.order == (1, 2)


def test_home_side_goes_first():
    instance = Instance(n=2, values=GameValueFunction.round_oblivious({(2, 1): 4, (1, 2): 1}))
    result = approx_matching(instance)
    assert result.seeding.order == (2, 1)
    assert result.value == 4


def test_tight_instance_eight(tight8):
    result = approx_matching(tight8)
    assert result.value == 11
    assert result.seeding.order == (7, 8, 1, 2, 3, 4, 5, 6)
    assert result.algorithm is Algorithm.MATCHING
    assert brute_force(tight8, cap=8).value == 31


def test_tight_instance_four():
    instance = make_tight_instance(4, 10)
    assert approx_matching(instance).value == 11
    assert brute_force(instance, cap=8).value == 21


def test_make_tight_instance_errors():
    with pytest.raises(ValidationError):
        make_tight_instance(2, 10)
    with pytest.raises(ValidationError):
        make_tight_instance(6, 10)
    with pytest.raises(ValidationError):
        make_tight_instance(8, 1)


def test_matching_rejects_general_functions():
    instance = Instance(n=4, values=GameValueFunction.general({(2, 1, 1): 1}))
    with pytest.raises(KindError):
        approx_matching(instance)


def test_max_weight_matching_is_maximum():
    rng = random.Random(12)
    for _ in range(40):
        instance = random_instance(ValueKind.ROUND_OBLIVIOUS, 8, rng, low=0, high=9, density=0.4)
        graph = WeightedPairGraph.from_instance(instance)
        best = max(sum(graph.w(i, j) for i, j in m) for m in all_matchings(list(range(1, 9))))
        assert matching_weight(graph, max_weight_matching(graph)) == best


def test_matching_weight_bounds_every_round():
    rng = random.Random(13)
    for _ in range(30):
        instance = random_instance(ValueKind.ROUND_OBLIVIOUS, 8, rng, low=0, high=9)
        graph = WeightedPairGraph.from_instance(instance)
        weight = matching_weight(graph, max_weight_matching(graph))
        optimum = brute_force(instance, cap=8)
        for total in evaluate(instance, optimum.seeding).round_totals().values():
            assert total <= weight


def test_approximation_guarantee():
    rng = random.Random(14)
    for _ in range(200):
        instance = random_instance(ValueKind.ROUND_OBLIVIOUS, 8, rng, low=0, high=9)
        approx = approx_matching(instance).value
        optimum = brute_force(instance, cap=8).value
        assert approx <= optimum
        assert 3 * approx >= optimum


def test_negative_values_still_produce_a_valid_seeding():
    rng = random.Random(15)
    instance = random_instance(ValueKind.ROUND_OBLIVIOUS, 4, rng, low=-9, high=9)
    result = approx_matching(instance)
    assert result.verify(instance)
