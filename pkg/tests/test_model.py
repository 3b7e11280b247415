import random

import pytest
from hypothesis import given, settings, strategies as st

from src.bench.families import random_instance
from src.model.errors import ArithmeticOverflowError, KindError, ValidationError
from src.model.instance import (
    Game,
    Instance,
    Seeding,
    detect_win_count,
    evaluate,
    is_home_team_oblivious,
    random_seeding,
    shift,
    symmetrize,
    wincount_total,
)
from src.model.values import (
    INT64_MAX,
    GameValueFunction,
    ValueKind,
    checked_add,
    num_rounds,
    player_eval_from_wincount,
)
from src.reductions.constructions import construct1
from src.solvers.exact import brute_force
from tests.conftest import make_popularity


# ---------------------------------------------------------------------------
# Value functions
# ---------------------------------------------------------------------------


def test_zero_entries_are_dropped():
    values = GameValueFunction.round_oblivious({(1, 2): 0, (2, 1): 3})
    assert dict(values.table) == {(2, 1): 3}
    assert values == GameValueFunction.round_oblivious({(2, 1): 3})


def test_value_lookup_per_kind():
    assert GameValueFunction.general({(1, 2, 1): 4}).value(1, 2, 1) == 4
    assert GameValueFunction.general({(1, 2, 1): 4}).value(2, 1, 1) == 0
    assert GameValueFunction.round_oblivious({(1, 2): 4}).value(1, 2, 2) == 4
    assert GameValueFunction.win_count({(2, 1): 4}).value(1, 2, 1) == 4
    assert GameValueFunction.popularity({3: 7}).value(3, 1, 2) == 7


def test_distinct_values_ignore_player_one_and_count_missing_keys():
    assert GameValueFunction.popularity({1: 5, 2: 3, 4: 7}).distinct_values(4) == {0, 3, 7}
    assert GameValueFunction.popularity({2: 3, 3: 3, 4: 7}).distinct_values(4) == {3, 7}
    assert GameValueFunction.win_count({(1, 1): 9, (2, 1): 4}).distinct_values(4) == {0, 4}
    full = {(i, r): i * r for i in range(2, 5) for r in (1, 2)}
    assert GameValueFunction.win_count(full).distinct_values(4) == {2, 3, 4, 6, 8}
    assert GameValueFunction.round_oblivious({(1, 2): 1, (2, 1): 1}).distinct_values(2) == {1}
    assert GameValueFunction.round_oblivious({(1, 2): 1}).distinct_values(2) == {0, 1}


def test_invalid_keys_rejected():
    with pytest.raises(ValidationError):
        GameValueFunction.general({(1, 2): 1})
    with pytest.raises(ValidationError):
        Instance(n=4, values=GameValueFunction.general({(1, 5, 1): 1}))
    with pytest.raises(ValidationError):
        Instance(n=4, values=GameValueFunction.general({(1, 2, 3): 1}))
    with pytest.raises(ValidationError):
        Instance(n=4, values=GameValueFunction.round_oblivious({(2, 2): 1}))


def test_non_power_of_two_rejected():
    with pytest.raises(ValidationError):
        Instance(n=6, values=GameValueFunction.popularity({}))
    with pytest.raises(ValidationError):
        num_rounds(0)


def test_checked_add_overflows():
    with pytest.raises(ArithmeticOverflowError):
        checked_add(INT64_MAX, 1)
    assert isinstance(ArithmeticOverflowError("x"), OverflowError)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def test_evaluate_two_players():
    instance = Instance(n=2, values=GameValueFunction.general({(2, 1, 1): 5}))
    report = evaluate(instance, Seeding((2, 1)))
    assert report.total == 5
    assert report.winner == 2
    assert report.games == (Game(1, 2, 1, 5),)


def test_evaluate_uses_lower_position_as_first_argument():
    instance = Instance(n=2, values=GameValueFunction.general({(2, 1, 1): 5}))
    assert evaluate(instance, Seeding((1, 2))).total == 0


def test_evaluate_popularity_four(popularity4):
    report = evaluate(popularity4, Seeding((4, 1, 3, 2)))
    assert report.total == 11
    assert [(g.winner, g.loser, g.value) for g in report.games] == [(4, 1, 4), (3, 2, 3), (4, 3, 4)]
    assert dict(report.win_counts) == {4: 2, 1: 0, 3: 1, 2: 0}
    assert report.round_totals() == {1: 7, 2: 4}
    assert report.meets_target(11) and not report.meets_target(12)


def test_evaluate_tight_instance(tight8, tight8_optimal_seeding):
    assert evaluate(tight8, tight8_optimal_seeding).total == 31


def test_single_player_tournament():
    instance = Instance(n=1, values=GameValueFunction.popularity({}))
    report = evaluate(instance, Seeding((1,)))
    assert report.total == 0
    assert report.games == ()
    assert report.winner == 1


def test_evaluate_overflow():
    instance = make_popularity({1: 0, 2: 0, 3: 0, 4: 2**62})
    with pytest.raises(ArithmeticOverflowError):
        evaluate(instance, Seeding((4, 1, 3, 2)))


def test_invalid_seedings():
    with pytest.raises(ValidationError):
        Seeding((1, 1, 2, 3))
    with pytest.raises(ValidationError):
        Seeding((1, 2, 3))
    instance = make_popularity({1: 1, 2: 2})
    with pytest.raises(ValidationError):
        evaluate(instance, Seeding((1, 2, 3, 4)))


@given(
    kind=st.sampled_from(list(ValueKind)),
    n=st.sampled_from([2, 4, 8]),
    seed=st.integers(min_value=0, max_value=10_000),
)
@settings(max_examples=60, deadline=None)
def test_evaluation_report_invariants(kind, n, seed):
    rng = random.Random(seed)
    instance = random_instance(kind, n, rng, density=0.6)
    seeding = random_seeding(n, rng)
    report = evaluate(instance, seeding)
    assert len(report.games) == n - 1
    assert report.winner == n
    assert report.total == sum(g.value for g in report.games)
    assert sum(report.win_counts.values()) == n - 1
    for player, wins in report.win_counts.items():
        assert wins == sum(1 for g in report.games if g.winner == player)


# ---------------------------------------------------------------------------
# Normalizations
# ---------------------------------------------------------------------------


def test_symmetrize_takes_the_better_order():
    instance = Instance(n=2, values=GameValueFunction.general({(1, 2, 1): 3, (2, 1, 1): 7}))
    sym = symmetrize(instance)
    assert sym.value(1, 2, 1) == 7 and sym.value(2, 1, 1) == 7
    assert is_home_team_oblivious(sym)
    assert not is_home_team_oblivious(instance)


def test_symmetrize_is_idempotent(tight8):
    assert symmetrize(tight8).values == tight8.values
    assert symmetrize(symmetrize(tight8)).values == symmetrize(tight8).values


def test_shift_identity_and_target():
    instance = Instance(n=2, values=GameValueFunction.general({(2, 1, 1): 1}), target=1)
    assert shift(instance, 0).values == instance.values
    shifted = shift(instance, 6)
    assert shifted.value(2, 1, 1) == 7
    assert shifted.target == 7
    assert brute_force(shifted, cap=8).value == brute_force(instance, cap=8).value + 6


def test_normalization_laws_on_random_instances():
    rng = random.Random(6)
    for _ in range(100):
        kind = rng.choice([ValueKind.GENERAL, ValueKind.ROUND_OBLIVIOUS])
        instance = random_instance(kind, 4, rng, low=-9, high=9)
        opt = brute_force(instance, cap=8, prune=False).value
        assert brute_force(symmetrize(instance), cap=8, prune=False).value == opt
        assert brute_force(shift(instance, -3), cap=8).value == opt - 9
        assert brute_force(shift(instance, 6), cap=8).value == opt + 18


# ---------------------------------------------------------------------------
# Win-count detection
# ---------------------------------------------------------------------------


def test_detect_win_count_of_popularity(popularity4):
    v_prime = detect_win_count(popularity4)
    assert v_prime.kind is ValueKind.WIN_COUNT
    assert all(v_prime.value(i, 1, r) == i for i in range(2, 5) for r in (1, 2))


def test_detect_win_count_of_round_product():
    table = {(i, j, r): max(i, j) * r for i in range(1, 5) for j in range(1, 5) if i != j for r in (1, 2)}
    instance = Instance(n=4, values=GameValueFunction.general(table))
    v_prime = detect_win_count(instance)
    assert dict(v_prime.table) == {(i, r): i * r for i in range(2, 5) for r in (1, 2)}


def test_detect_win_count_absent_on_reduction(phi):
    assert detect_win_count(construct1(phi).instance) is None


def test_player_eval_prefix_sums():
    p = player_eval_from_wincount(GameValueFunction.win_count({(4, 1): 2, (4, 2): 5}), 4)
    assert p(4, 0) == 0 and p(4, 1) == 2 and p(4, 2) == 7
    constant = player_eval_from_wincount(detect_win_count(make_popularity({1: 0, 2: 3, 3: 0, 4: 0})), 4)
    assert constant(2, 2) == 6
    with pytest.raises(KindError):
        player_eval_from_wincount(GameValueFunction.popularity({2: 1}), 4)


def test_wincount_total_matches_evaluation():
    rng = random.Random(11)
    for _ in range(5):
        instance = random_instance(ValueKind.WIN_COUNT, 8, rng)
        p = player_eval_from_wincount(instance.values, 8)
        for _ in range(100):
            report = evaluate(instance, random_seeding(8, rng))
            assert wincount_total(p, report.win_counts) == report.total
