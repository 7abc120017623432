"""Multi-district bribery.

Seat objectives decompose over districts: a per-district cost table gives
the cheapest bribe reaching each seat count for P*, and a knapsack over
districts combines them.  The FPTP destructive-winner problem reduces to a
multiple-choice knapsack per rival.  The remaining winner variants are
NP-hard and only solved exhaustively at desk scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import Method
from .oracle import multi_district_min_budget
from .problem import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    SEATS,
    WINNER,
    CampaignPlan,
    Decision,
    Election,
    Move,
    seat_outcome,
)
from .solvers_single import UNBOUNDED, fptp_win_cost, min_budget, solve

__all__ = [
    "CostTable",
    "build_cost_table",
    "mab",
    "dmab",
    "multi_min_budget",
    "fptp_dmawb",
    "winner_multi_search",
]


@dataclass(frozen=True)
class CostTable:
    '''Cheapest bribe per district and seat count of P*.

    ``full[j][s]`` is the cost of "at least s seats" (constructive) or
    "at most s seats" (destructive) in district j, ``UNBOUNDED`` when out
    of reach.  ``rows[j]`` keeps the undominated ``(s, cost)`` pairs: for
    equal cost only the larger (constructive) or smaller (destructive) s.
    '''

    direction: str
    full: tuple
    rows: tuple

    def cost(self, j: int, s: int):
        return self.full[j][s]


def _prune(costs, direction):
    order = range(len(costs) - 1, -1, -1) if direction == CONSTRUCTIVE else range(len(costs))
    rows = []
    seen = set()
    for s in order:
        c = costs[s]
        if c is UNBOUNDED or c in seen:
            continue
        seen.add(c)
        rows.append((s, c))
    return tuple(sorted(rows))


def build_cost_table(election: Election, target: int, method: Method, direction: str,
                     budget_cap: Optional[int] = None) -> CostTable:
    '''Per-district cost tables from the single-district solvers.

    Costs above ``budget_cap`` are reported as ``UNBOUNDED``.
    '''
    full = []
    for d in election.districts:
        k = d.seats
        costs = [UNBOUNDED] * (k + 1)
        if direction == CONSTRUCTIVE:
            costs[0] = 0
            levels = range(1, k + 1)
        else:
            costs[k] = 0
            levels = range(k - 1, -1, -1)
        prev = 0
        for s in levels:
            inst = d.instance(method, target, objective=SEATS, direction=direction, level=s)
            if prev is UNBOUNDED:
                break
            # costs are monotone in s, so the previous level is a lower bound
            if solve(inst.with_budget(prev)):
                c = prev
            else:
                c, _ = min_budget(inst, max_budget=budget_cap)
            costs[s] = UNBOUNDED if c is None else c
            prev = costs[s]
        full.append(tuple(costs))
    return CostTable(direction, tuple(full), tuple(_prune(c, direction) for c in full))


def _district_plan(election, j, method, target, direction, level, cost) -> tuple:
    if cost == 0:
        return ()
    d = election.districts[j]
    inst = d.instance(method, target, objective=SEATS, direction=direction, level=level, budget=cost)
    dec = solve(inst)
    if not dec:  # pragma: no cover - the cost table promised a YES
        raise RuntimeError(f"district {j}: no plan at cost {cost}")
    return tuple(Move(m.source, m.dest, m.count, j) for m in dec.plan.moves)


def _combine(table: CostTable, level: int, budget) -> Optional[tuple]:
    # min-cost choice of one (s, cost) row per district; constructive caps the
    # running seat sum at level, destructive keeps it at most level
    constructive = table.direction == CONSTRUCTIVE
    best = {0: (0, ())}
    for rows in table.rows:
        nxt = {}
        for g, (c, picks) in best.items():
            for s, cost in rows:
                g2 = min(g + s, level) if constructive else g + s
                c2 = c + cost
                if (not constructive and g2 > level) or c2 > budget:
                    continue
                if g2 not in nxt or c2 < nxt[g2][0]:
                    nxt[g2] = (c2, picks + ((s, cost),))
        best = nxt
        if not best:
            return None
    if constructive:
        return best.get(level)
    return min(best.values())


def _seat_bribery(election, target, level, budget, method, direction) -> Decision:
    table = build_cost_table(election, target, method, direction, budget_cap=budget)
    got = _combine(table, level, budget)
    if got is None:
        return Decision(False)
    moves = []
    for j, (s, cost) in enumerate(got[1]):
        moves.extend(_district_plan(election, j, method, target, direction, s, cost))
    return Decision(True, CampaignPlan(tuple(moves)))


def mab(election: Election, target: int, level: int, budget: int, method: Method) -> Decision:
    '''P* must win at least ``level`` seats over all districts.'''
    return _seat_bribery(election, target, level, budget, method, CONSTRUCTIVE)


def dmab(election: Election, target: int, level: int, budget: int, method: Method) -> Decision:
    '''P* must win at most ``level`` seats over all districts.'''
    return _seat_bribery(election, target, level, budget, method, DESTRUCTIVE)


def multi_min_budget(election: Election, target: int, level: int, method: Method,
                     direction: str, table: Optional[CostTable] = None):
    '''Cheapest total bribe for a multi-district seat goal, or None.'''
    if table is None:
        table = build_cost_table(election, target, method, direction)
    got = _combine(table, level, math.inf)
    return None if got is None else got[0]


# --- FPTP destructive winner ---------------------------------------------

def _fptp_district_options(d, target: int, rival: int):
    '''Cheapest way to reach each district outcome class, as value -> (cost, final).

    The value is the change of (rival seats - P* seats) in this district.
    '''
    k = d.seats
    p = list(d.votes)
    te = max(d.tau, 1)
    now = seat_outcome(p, k, Method.fptp(), d.tau)
    before = now[rival] - now[target]
    opts = {}

    def offer(after, cost, final):
        v = after - before
        if v > 0 and (v not in opts or cost < opts[v][0]):
            opts[v] = (cost, final)

    for w in range(len(p)):
        got = fptp_win_cost(p, w, d.tau)
        if got:
            after = k if w == rival else (-k if w == target else 0)
            offer(after, got[0], got[1])
    # nobody qualifies: every party below the threshold
    if d.n <= len(p) * (te - 1):
        final = [min(v, te - 1) for v in p]
        spill = d.n - sum(final)
        for i in range(len(p)):
            add = min(te - 1 - final[i], spill)
            final[i] += add
            spill -= add
        offer(0, sum(max(0, v - (te - 1)) for v in p), tuple(final))
    return opts


def fptp_dmawb(election: Election, target: int, budget: int) -> Decision:
    '''Some rival must end with more seats than P* under FPTP.

    For each rival a multiple-choice knapsack picks, per district, one
    outcome: the rival takes the district, P* loses it to a third party
    (or to an empty result), or nothing changes.  Values are changes of the
    seat difference, weights are vote moves.
    '''
    m = len(election.parties)
    seats = election.outcome(Method.fptp())
    for r in range(m):
        if r == target:
            continue
        gap = seats[target] - seats[r] + 1
        if gap <= 0:
            return Decision(True, CampaignPlan())
        # best[c] = (value, picks) reachable with total cost c
        best = {0: (0, ())}
        for j, d in enumerate(election.districts):
            opts = _fptp_district_options(d, target, r)
            nxt = dict(best)
            for c, (v, picks) in best.items():
                for val, (cost, final) in opts.items():
                    c2 = c + cost
                    if c2 > budget:
                        continue
                    v2 = v + val
                    if c2 not in nxt or v2 > nxt[c2][0]:
                        nxt[c2] = (v2, picks + ((j, final),))
            best = nxt
        for c in sorted(best):
            v, picks = best[c]
            if v >= gap:
                moves = []
                for j, final in picks:
                    moves.extend(CampaignPlan.from_vectors(election.districts[j].votes, final, j).moves)
                return Decision(True, CampaignPlan(tuple(moves)))
    return Decision(False)


# --- exhaustive search ---------------------------------------------------

def winner_multi_search(election: Election, target: int, budget: int, method: Method,
                        direction: str, objective: str = WINNER, level: Optional[int] = None) -> Decision:
    '''Exact search over per-district final vote vectors (desk scale only).

    Raises ``InstanceTooLargeError`` beyond the enumeration guardrails
    (at most 4 districts, 6 parties and 300,000 vote vectors per district).
    '''
    districts = [(d.votes, d.seats, d.tau) for d in election.districts]
    best, plan = multi_district_min_budget(districts, method, target, objective, direction, level, budget_cap=budget)
    if best is None:
        return Decision(False)
    return Decision(True, plan)
