import pytest

from seatstorm.alloc import RankedProfile
from seatstorm.core import Method
from seatstorm.oracle import (
    InstanceTooLargeError,
    compositions,
    oracle_decide_second_chance,
    oracle_decide_top_choice,
    oracle_min_budget,
    second_chance_min_budget,
    voterwise_second_chance_min_budget,
)
from seatstorm.problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, WINNER, BriberyInstance

from diversion_cases import CASES


def test_compositions():
    c = compositions(3, 3)
    assert len(c) == 10
    assert (c.sum(axis=1) == 3).all()
    assert len({tuple(r) for r in c.tolist()}) == 10


def test_guardrails():
    with pytest.raises(InstanceTooLargeError):
        compositions(200, 6)
    with pytest.raises(InstanceTooLargeError):
        compositions(3, 7)


def test_top_choice_oracle_example():
    i = BriberyInstance((5, 3, 1), 2, Method.dhondt(), 1, 0, SEATS, CONSTRUCTIVE, 2, budget=3)
    d, best = oracle_decide_top_choice(i)
    assert best == 3 and d and i.check_plan(d.plan)
    d, _ = oracle_decide_top_choice(i.with_budget(2))
    assert not d


def test_restricted_search_never_cheaper():
    i = BriberyInstance((2, 4, 1), 3, Method.sainte_lague(), 0, 2, WINNER, CONSTRUCTIVE)
    free, _ = oracle_min_budget(i)
    only_in, _ = oracle_min_budget(i, restricted=True)
    assert only_in >= free


@pytest.mark.parametrize("name", sorted(CASES))
def test_second_chance_enumerators_agree(name):
    inst = CASES[name]
    best, _ = second_chance_min_budget(inst, 3)
    assert best is not None and best > 0
    assert voterwise_second_chance_min_budget(inst, 3) == best


def test_second_chance_without_threshold_matches_top_choice():
    prof = RankedProfile((((0, 1, 2), 3), ((1, 2, 0), 2), ((2, 0, 1), 2)), 3)
    for direction, level in ((CONSTRUCTIVE, 2), (DESTRUCTIVE, 0)):
        ranked = BriberyInstance((), 2, Method.dhondt(), 1, 0, SEATS, direction, level, budget=2, ballots=prof)
        plain = BriberyInstance(prof.top_choices().counts, 2, Method.dhondt(), 1, 0, SEATS, direction, level, budget=2)
        assert bool(oracle_decide_second_chance(ranked)[0]) == bool(oracle_decide_top_choice(plain)[0])


def test_second_chance_guardrail():
    prof = RankedProfile((((0, 1), 13),), 2)
    i = BriberyInstance((), 1, Method.dhondt(), 1, 0, SEATS, CONSTRUCTIVE, 1, budget=1, ballots=prof)
    with pytest.raises(InstanceTooLargeError):
        second_chance_min_budget(i)


def test_tabulated_and_enumerated_rewrites_agree():
    import random

    from seatstorm.oracle import _ballot_types, _enumerated_min, _tabulated_min

    rng = random.Random(12)
    types = _ballot_types(3)
    for _ in range(150):
        base = [0] * 6
        for _ in range(rng.randint(0, 7)):
            base[rng.randrange(6)] += 1
        prof = RankedProfile(tuple((t, c) for t, c in zip(types, base) if c), 3)
        obj, dr, lv = rng.choice([(SEATS, CONSTRUCTIVE, 2), (SEATS, DESTRUCTIVE, 0), (WINNER, DESTRUCTIVE, None)])
        inst = BriberyInstance((), 2, Method.sainte_lague(), rng.randrange(3), rng.choice((0, 2, 3)), obj, dr, lv,
                               budget=2, ballots=prof)
        assert _tabulated_min(inst, 2, base, types)[0] == _enumerated_min(inst, 2, base, types)[0]
