import pytest

from seatstorm.core import Method
from seatstorm.oracle import InstanceTooLargeError
from seatstorm.problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, District, Election
from seatstorm.solvers_multi import (
    UNBOUNDED,
    build_cost_table,
    dmab,
    fptp_dmawb,
    mab,
    multi_min_budget,
    winner_multi_search,
)
from seatstorm.validation import multi_district_check

from conftest import EXAMPLE_VOTES

DH = Method.dhondt()
FPTP = Method.fptp()


def example_twice():
    d = District(EXAMPLE_VOTES, 6, 100)
    return Election(tuple(f"P{i}" for i in range(1, 6)), (d, d))


def test_two_copies_of_the_example():
    e = example_twice()
    assert e.outcome(DH) == (8, 2, 2, 0, 0)
    assert mab(e, 0, 8, 0, DH)
    assert not dmab(e, 0, 7, 0, DH)
    assert dmab(e, 0, 8, 0, DH)


def test_cost_table():
    e = Election(("A", "B"), (District((5, 3), 2),))
    table = build_cost_table(e, 1, DH, CONSTRUCTIVE)
    # B already holds one seat; two seats need B ahead on both entries
    assert table.cost(0, 0) == 0 and table.cost(0, 1) == 0
    assert table.cost(0, 2) == 3
    assert multi_min_budget(e, 1, 2, DH, CONSTRUCTIVE) == 3


def test_cost_table_unreachable_marked():
    e = Election(("A", "B"), (District((5, 0), 2, 9),))
    table = build_cost_table(e, 1, DH, CONSTRUCTIVE, budget_cap=3)
    assert table.cost(0, 1) is UNBOUNDED


def test_plans_replay():
    e = example_twice()
    d = mab(e, 1, 4, 400, DH)
    assert d and d.plan.cost <= 400
    total = [0] * 5
    for j, dist in enumerate(e.districts):
        votes = d.plan.apply(dist.votes, j)
        assert sum(votes) == dist.n
        for i, s in enumerate(Election(e.parties, (District(votes, 6, 100),)).outcome(DH)):
            total[i] += s
    assert total[1] >= 4


def test_fptp_destructive_winner_third_party_case():
    # P1 wins five districts narrowly, the third party wins four; with two
    # moves P1 loses two districts to P2, leaving P3 ahead
    close = District((5, 4, 0), 1)
    solid = District((0, 0, 5), 1)
    e = Election(("P1", "P2", "P3"), (close,) * 5 + (solid,) * 4)
    assert e.outcome(FPTP) == (5, 0, 4)
    d = fptp_dmawb(e, 0, 2)
    assert d
    assert not fptp_dmawb(e, 0, 1)


def test_fptp_destructive_winner_vs_search():
    e = Election(("A", "B", "C"), (District((3, 2, 1), 1), District((2, 2, 2), 1), District((1, 0, 4), 1)))
    for k in range(4):
        assert bool(fptp_dmawb(e, 0, k)) == bool(winner_multi_search(e, 0, k, FPTP, DESTRUCTIVE))


def test_sampled_multi_district_agreement():
    rep = multi_district_check(15, seed=99)
    assert rep.ok, rep.mismatches[:3]


def test_seat_level_search_matches_dp():
    e = Election(("A", "B", "C"), (District((4, 2, 1), 2), District((1, 3, 2), 2)))
    for level in range(0, 5):
        for k in range(3):
            exact = winner_multi_search(e, 2, k, DH, DESTRUCTIVE, SEATS, level)
            assert bool(dmab(e, 2, level, k, DH)) == bool(exact)


def test_search_guardrail():
    d = District((1, 1, 1), 1)
    e = Election(("A", "B", "C"), (d,) * 5)
    with pytest.raises(InstanceTooLargeError):
        winner_multi_search(e, 0, 1, DH, CONSTRUCTIVE)

