import random
from fractions import Fraction

import pytest

from seatstorm.core import Method
from seatstorm.heuristics import (
    BALANCED,
    KINDS,
    OPTIMAL,
    STRONGEST_RIVAL,
    WEAKEST_RIVAL,
    InfeasibleStrategyError,
    Strategy,
    district_cost,
    effectiveness_ratios,
    run_strategy,
    schedule_votes,
    select_party,
    strategy_budgets,
)
from seatstorm.oracle import oracle_min_budget
from seatstorm.problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, District, Election, seat_outcome

DH = Method.dhondt()


def single(votes, seats, tau=0):
    return Election(tuple(f"P{i + 1}" for i in range(len(votes))), (District(tuple(votes), seats, tau),))


def test_schedules():
    assert schedule_votes((5, 3, 1), 1, WEAKEST_RIVAL, CONSTRUCTIVE, 2) == (4, 5, 0)
    assert schedule_votes((5, 3, 1), 1, STRONGEST_RIVAL, CONSTRUCTIVE, 6) == (0, 9, 0)
    assert schedule_votes((5, 3, 1), 1, BALANCED, CONSTRUCTIVE, 3) == (2, 6, 1)
    assert schedule_votes((5, 3, 1), 0, WEAKEST_RIVAL, DESTRUCTIVE, 2) == (3, 3, 3)
    assert schedule_votes((6, 3, 1), 0, BALANCED, DESTRUCTIVE, 4) == (2, 6, 2)
    with pytest.raises(ValueError):
        schedule_votes((5, 3, 1), 1, BALANCED, CONSTRUCTIVE, 7)


def test_balanced_conserves_votes():
    rng = random.Random(3)
    for _ in range(200):
        votes = [rng.randint(0, 50) for _ in range(rng.randint(2, 6))]
        t = rng.randrange(len(votes))
        movable = sum(votes) - votes[t]
        b = rng.randint(0, movable)
        after = schedule_votes(votes, t, BALANCED, CONSTRUCTIVE, b)
        assert sum(after) == sum(votes) and min(after) >= 0
        assert after[t] == votes[t] + b


def test_each_strategy_matches_schedule_replay():
    e = single((5, 3, 1), 2)
    d = e.districts[0]
    for kind in KINDS[1:]:
        b = run_strategy(e, 1, Strategy(kind), DH)
        before = seat_outcome(d.votes, 2, DH, 0)[1]
        assert seat_outcome(schedule_votes(d.votes, 1, kind, CONSTRUCTIVE, b), 2, DH, 0)[1] > before
        assert seat_outcome(schedule_votes(d.votes, 1, kind, CONSTRUCTIVE, b - 1), 2, DH, 0)[1] == before


def test_optimal_equals_oracle():
    e = single((5, 3, 1), 2)
    inst = e.districts[0].instance(DH, 1, objective=SEATS, level=2)
    assert run_strategy(e, 1, Strategy(OPTIMAL), DH) == oracle_min_budget(inst)[0]


def test_threshold_push_coincides():
    # P2 holds one seat with 12 votes at threshold 11: two moves push it out
    e = single((40, 12, 30), 6, 11)
    assert e.outcome(DH)[1] == 1
    inst = e.districts[0].instance(DH, 1, objective=SEATS, direction=DESTRUCTIVE, level=0)
    assert oracle_min_budget(inst)[0] == 2
    costs = {k: run_strategy(e, 1, Strategy(k, DESTRUCTIVE), DH) for k in KINDS}
    assert set(costs.values()) == {12 - 11 + 1}


def test_ratios_at_least_one():
    rng = random.Random(8)
    for _ in range(30):
        votes = [rng.randint(1, 60) for _ in range(4)]
        e = single(votes, rng.randint(2, 6), rng.choice((0, 5)))
        for direction in (CONSTRUCTIVE, DESTRUCTIVE):
            try:
                r = effectiveness_ratios(e, "average", direction, DH)
            except InfeasibleStrategyError:
                continue
            assert r[OPTIMAL] == 1
            assert all(v >= 1 for v in r.values())


def test_ratio_is_quotient_of_means():
    e = single((50, 30, 15, 5), 10, 4)
    parties = select_party(e, "average", CONSTRUCTIVE, DH)
    budgets = strategy_budgets(e, parties, CONSTRUCTIVE, DH)
    r = effectiveness_ratios(e, "average", CONSTRUCTIVE, DH)
    for kind, b in budgets.items():
        assert r[kind] == Fraction(sum(b), sum(budgets[OPTIMAL]))


def test_party_selection():
    e = single((50, 30, 15, 5), 10, 8)
    assert select_party(e, "strongest", CONSTRUCTIVE, DH) == [0]
    assert select_party(e, "weakest", CONSTRUCTIVE, DH) == [3]
    # the weakest party holding a seat
    assert select_party(e, "weakest", DESTRUCTIVE, DH) == [2]
    with pytest.raises(ValueError):
        select_party(e, "median", CONSTRUCTIVE, DH)


def test_multi_district_uses_cheapest_district():
    a = District((10, 9), 1)
    b = District((10, 2), 1)
    e = Election(("A", "B"), (a, b))
    assert district_cost(a, 1, WEAKEST_RIVAL, CONSTRUCTIVE, DH) == 1
    assert run_strategy(e, "B", Strategy(WEAKEST_RIVAL), DH) == 1


def test_infeasible():
    e = single((5, 0), 1)
    with pytest.raises(InfeasibleStrategyError):
        run_strategy(e, 0, Strategy(BALANCED), DH)
    with pytest.raises(ValueError):
        Strategy("random")
