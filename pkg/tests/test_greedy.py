import random

import pytest

from src.bench.families import monotone_popularity, popularity_with_values
from src.model.errors import KindError, ValidationError
from src.model.instance import Instance, evaluate
from src.model.values import GameValueFunction
from src.solvers.base import Algorithm
from src.solvers.exact import brute_force, dp_wincount
from src.solvers.greedy import PopularityInstance, greedy_agree_order, greedy_two_values
from tests.conftest import make_popularity


def test_popularity_instance_validation():
    with pytest.raises(ValidationError):
        PopularityInstance(4, {1: -1})
    with pytest.raises(ValidationError):
        PopularityInstance(4, {5: 1})
    with pytest.raises(ValidationError):
        PopularityInstance(3, {1: 1})
    assert dict(PopularityInstance(2, {2: 3}).v) == {1: 0, 2: 3}


def test_popularity_instance_from_round_constant_win_count():
    instance = Instance(n=4, values=GameValueFunction.win_count({(i, r): i for i in (2, 3, 4) for r in (1, 2)}))
    pop = PopularityInstance.from_instance(instance)
    assert dict(pop.v) == {1: 0, 2: 2, 3: 3, 4: 4}


def test_popularity_instance_rejects_round_dependent_values():
    instance = Instance(n=4, values=GameValueFunction.win_count({(4, 1): 1, (4, 2): 5}))
    with pytest.raises(KindError):
        PopularityInstance.from_instance(instance)
    assert PopularityInstance.try_from_instance(instance) is None


def test_popularity_instance_rejects_general_functions(tight8):
    assert PopularityInstance.try_from_instance(tight8) is None


# ---------------------------------------------------------------------------
# Two values
# ---------------------------------------------------------------------------


def test_greedy_two_values_example():
    pop = PopularityInstance(4, {4: 10, 2: 10, 3: 1, 1: 1})
    result = greedy_two_values(pop)
    assert result.value == 30
    assert result.algorithm is Algorithm.GREEDY2
    assert result.value == brute_force(pop.to_instance(), cap=8).value


def test_greedy_two_values_single_value():
    pop = PopularityInstance(8, {i: 3 for i in range(1, 9)})
    assert greedy_two_values(pop).value == 3 * 7


def test_greedy_two_values_rejects_three_values():
    with pytest.raises(KindError):
        greedy_two_values(PopularityInstance(4, {1: 1, 2: 2, 3: 3}))


def test_greedy_two_values_ignores_player_one():
    pop = PopularityInstance(4, {1: 5, 2: 3, 3: 3, 4: 7})
    assert pop.distinct_values() == {3, 7}
    result = greedy_two_values(pop)
    assert result.value == 17
    assert result.value == brute_force(pop.to_instance(), cap=8).value


def test_greedy_two_values_single_player():
    result = greedy_two_values(PopularityInstance(1, {1: 4}))
    assert result.value == 0
    assert result.seeding.order == (1,)


def test_greedy_two_values_is_optimal():
    rng = random.Random(31)
    for n in (4, 8):
        for _ in range(200):
            instance = popularity_with_values(n, 2, rng)
            result = greedy_two_values(PopularityInstance.from_instance(instance))
            assert result.value == brute_force(instance, cap=8).value
            assert evaluate(instance, result.seeding).total == result.value


# ---------------------------------------------------------------------------
# Agreeing order
# ---------------------------------------------------------------------------


def test_greedy_agree_constant_values():
    pop = PopularityInstance(4, {i: 5 for i in range(1, 5)})
    assert greedy_agree_order(pop).value == 15


def test_greedy_agree_example(popularity4):
    result = greedy_agree_order(PopularityInstance.from_instance(popularity4))
    assert result.value == 11
    assert result.seeding.order == (4, 1, 3, 2)
    assert result.algorithm is Algorithm.AGREE


def test_greedy_agree_is_optimal():
    rng = random.Random(41)
    for _ in range(100):
        instance = monotone_popularity(8, rng)
        result = greedy_agree_order(PopularityInstance.from_instance(instance))
        assert result.value == dp_wincount(instance).value
        assert result.value == brute_force(instance, cap=8).value


def test_greedy_agree_rejects_disagreement():
    with pytest.raises(KindError):
        greedy_agree_order(PopularityInstance.from_instance(make_popularity({1: 0, 2: 5, 3: 1, 4: 2})))


def test_greedy_agree_ignores_player_one():
    rng = random.Random(17)
    for _ in range(30):
        v = {i: value for i, value in zip(range(2, 9), sorted(rng.randint(0, 9) for _ in range(7)))}
        v[1] = rng.randint(0, 20)
        pop = PopularityInstance(8, v)
        assert pop.is_monotone()
        assert greedy_agree_order(pop).value == brute_force(pop.to_instance(), cap=8).value
