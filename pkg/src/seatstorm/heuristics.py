"""Simple bribing strategies and their cost relative to the optimal solver.

Every strategy aims at one extra seat for P* (constructive) or one seat
fewer (destructive).  The simple strategies follow a fixed move schedule:

* balanced: votes are taken from (or given to) the rivals in proportion to
  their original vote counts, rounded by largest remainder;
* weakest rival / strongest rival: drain (or feed) the rival with the
  fewest / most original votes first, then the next one.

A strategy's cost is the smallest prefix of its schedule that reaches the
goal.  In elections with several districts each strategy runs inside one
district at a time and the cheapest district is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Method
from .problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, District, Election, seat_outcome
from .solvers_single import min_budget

__all__ = [
    "OPTIMAL",
    "BALANCED",
    "WEAKEST_RIVAL",
    "STRONGEST_RIVAL",
    "KINDS",
    "Strategy",
    "InfeasibleStrategyError",
    "schedule_votes",
    "district_cost",
    "run_strategy",
    "select_party",
    "strategy_budgets",
    "effectiveness_ratios",
]

OPTIMAL = "optimal"
BALANCED = "balanced"
WEAKEST_RIVAL = "weakest-rival"
STRONGEST_RIVAL = "strongest-rival"
KINDS = (OPTIMAL, BALANCED, WEAKEST_RIVAL, STRONGEST_RIVAL)


class InfeasibleStrategyError(ValueError):
    """The strategy runs out of movable votes before reaching its goal."""


@dataclass(frozen=True)
class Strategy:
    kind: str
    direction: str = CONSTRUCTIVE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.direction not in (CONSTRUCTIVE, DESTRUCTIVE):
            raise ValueError(f"unknown direction {self.direction!r}")


def _proportional(amount: int, weights: Sequence[int], caps: Optional[Sequence[int]]) -> list:
    # largest-remainder split of amount by weights; when a cap binds the
    # capped parties are fixed and the rest is split again among the others
    out = [0] * len(weights)
    live = [i for i, w in enumerate(weights) if w > 0 and (caps is None or caps[i] > 0)]
    left = amount
    while left > 0 and live:
        total = sum(weights[i] for i in live)
        share = {i: Fraction(left * weights[i], total) for i in live}
        capped = [i for i in live if caps is not None and share[i] >= caps[i] - out[i]]
        if capped:
            for i in capped:
                left -= caps[i] - out[i]
                out[i] = caps[i]
            live = [i for i in live if i not in capped]
            continue
        base = {i: share[i].numerator // share[i].denominator for i in live}
        rest = left - sum(base.values())
        order = sorted(live, key=lambda i: (-(share[i] - base[i]), i))
        for i in live:
            out[i] += base[i]
        for i in order[:rest]:
            out[i] += 1
        left = 0
    return out


def _ranked_rivals(votes, target, strongest):
    rivals = [i for i in range(len(votes)) if i != target]
    if strongest:
        return sorted(rivals, key=lambda i: (-votes[i], i))
    return sorted(rivals, key=lambda i: (votes[i], i))


def schedule_votes(votes: Sequence[int], target: int, kind: str, direction: str, budget: int) -> tuple:
    '''Vote counts after spending ``budget`` moves of a simple strategy.

    Raises ``ValueError`` when the budget exceeds the movable votes.
    '''
    p = list(votes)
    rivals = [i for i in range(len(p)) if i != target]
    if direction == CONSTRUCTIVE:
        if budget > sum(p[i] for i in rivals):
            raise ValueError("budget exceeds the rivals' votes")
        if kind == BALANCED:
            weights = [0 if i == target else v for i, v in enumerate(p)]
            taken = _proportional(budget, weights, p)
        else:
            taken = [0] * len(p)
            left = budget
            for i in _ranked_rivals(p, target, kind == STRONGEST_RIVAL):
                taken[i] = min(left, p[i])
                left -= taken[i]
        for i in rivals:
            p[i] -= taken[i]
        p[target] += budget
        return tuple(p)
    if budget > p[target]:
        raise ValueError("budget exceeds the distinguished party's votes")
    if kind == BALANCED:
        weights = [0 if i == target else v for i, v in enumerate(p)]
        if not any(weights):
            # no rival has votes: spread evenly in tie-break order
            weights = [0 if i == target else 1 for i in range(len(p))]
        given = _proportional(budget, weights, None)
    else:
        given = [0] * len(p)
        if rivals:
            given[_ranked_rivals(p, target, kind == STRONGEST_RIVAL)[0]] = budget
    for i in rivals:
        p[i] += given[i]
    p[target] -= budget
    return tuple(p)


def _goal_level(current: int, direction: str) -> int:
    return current + 1 if direction == CONSTRUCTIVE else current - 1


def district_cost(district: District, target: int, kind: str, direction: str, method: Method) -> Optional[int]:
    '''Cheapest prefix of a strategy's schedule changing P*'s seats by one in one district.

    Returns None when the goal is out of reach (P* already holds every
    seat, holds none in the destructive case, or the schedule runs dry).
    '''
    votes = district.votes
    tau = district.tau
    current = seat_outcome(votes, district.seats, method, tau)[target]
    level = _goal_level(current, direction)
    if not 0 <= level <= district.seats:
        return None
    if kind == OPTIMAL:
        inst = district.instance(method, target, objective=SEATS, direction=direction, level=level)
        cost, _ = min_budget(inst)
        return cost

    def reached(b):
        seats = seat_outcome(schedule_votes(votes, target, kind, direction, b), district.seats, method, tau)
        return seats[target] >= level if direction == CONSTRUCTIVE else seats[target] <= level

    top = district.n - votes[target] if direction == CONSTRUCTIVE else votes[target]
    if not reached(top):
        return None
    # exponential then binary search for the first budget that works
    lo, hi = 0, 1  # budget 0 never works: the goal is a change
    while hi < top and not reached(hi):
        lo, hi = hi, 2 * hi
    hi = min(hi, top)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if reached(mid):
            hi = mid
        else:
            lo = mid
    return hi


def run_strategy(election: Election, target: int, strategy: Strategy, method: Method) -> int:
    '''Budget a strategy needs to change P*'s seat total by one.

    With several districts the goal is met in the district where it is
    cheapest; a one-seat change in one district never needs moves in
    another, so for the optimal strategy this is the exact minimum.
    Raises ``InfeasibleStrategyError`` when no district works.
    '''
    target = election.party_index(target)
    costs = [district_cost(d, target, strategy.kind, strategy.direction, method) for d in election.districts]
    costs = [c for c in costs if c is not None]
    if not costs:
        name = election.parties[target]
        raise InfeasibleStrategyError(f"{strategy.kind} cannot change the seats of {name!r} by one")
    return min(costs)


def select_party(election: Election, selection: str, direction: str, method: Method) -> list:
    '''Parties considered for a ratio row.

    ``average`` takes every party (in the destructive case only parties
    holding a seat); ``strongest`` the party with the most votes;
    ``weakest`` the party with the fewest votes, again restricted to seat
    holders when destructive.  Vote ties go to the earlier party.
    '''
    totals = [sum(d.votes[i] for d in election.districts) for i in range(len(election.parties))]
    pool = list(range(len(totals)))
    if direction == DESTRUCTIVE:
        seats = election.outcome(method)
        pool = [i for i in pool if seats[i] > 0]
    if not pool:
        raise InfeasibleStrategyError("no party qualifies for the selection")
    if selection == "average":
        return pool
    if selection == "strongest":
        return [min(pool, key=lambda i: (-totals[i], i))]
    if selection in ("weakest", "weakest-with-seat"):
        return [min(pool, key=lambda i: (totals[i], i))]
    raise ValueError(f"unknown party selection {selection!r}")


def strategy_budgets(election: Election, parties: Sequence[int], direction: str, method: Method,
                     kinds: Sequence[str] = KINDS) -> dict:
    """Budget per strategy kind and party, as ``{kind: [budget per party]}``."""
    return {k: [run_strategy(election, t, Strategy(k, direction), method) for t in parties] for k in kinds}


def effectiveness_ratios(election: Election, selection: str, direction: str, method: Method,
                         kinds: Sequence[str] = KINDS) -> dict:
    '''Mean strategy budget over the selected parties divided by the mean optimal budget.

    Returns ``{kind: Fraction}``; ratios are exact, format them for
    display.  Raises ``InfeasibleStrategyError`` when a strategy cannot
    reach the goal for a selected party.
    '''
    parties = select_party(election, selection, direction, method)
    kinds = list(kinds)
    if OPTIMAL not in kinds:
        kinds.insert(0, OPTIMAL)
    budgets = strategy_budgets(election, parties, direction, method, kinds)
    base = sum(budgets[OPTIMAL])
    return {k: Fraction(sum(b), base) for k, b in budgets.items()}
