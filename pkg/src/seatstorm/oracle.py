"""Brute-force deciders used as ground truth for the solvers.

Top-choice voters with the same first preference are interchangeable, so
a bribery is fully described by the final count vector: moving votes from
``p`` to ``p'`` (same total) costs ``sum(max(0, p_i - p'_i))``.  The
oracle enumerates every final vector, evaluates the seat outcome and
keeps the cheapest one meeting the objective.

Second-chance ballots are handled the same way over ranking types: a
bribed ballot may be rewritten to any of the m! rankings, so the final
profile (counts per ranking) is all that matters.

Every entry point enforces a size guardrail and raises
``InstanceTooLargeError`` instead of running for hours.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

import numpy as np

from .alloc import RankedProfile
from .core import Method
from .problem import (
    CONSTRUCTIVE,
    SEATS,
    BriberyInstance,
    CampaignPlan,
    Decision,
    Move,
    ranked_outcome,
    seat_outcome,
)

__all__ = [
    "InstanceTooLargeError",
    "compositions",
    "oracle_min_budget",
    "oracle_decide_top_choice",
    "oracle_decide_second_chance",
    "second_chance_min_budget",
    "voterwise_second_chance_min_budget",
    "district_options",
    "multi_district_min_budget",
]

MAX_STATES = 300_000
MAX_PARTIES = 6


class InstanceTooLargeError(ValueError):
    """The instance exceeds the oracle's enumeration guardrail."""


def _guard(name: str, value: int, limit: int) -> None:
    if value > limit:
        raise InstanceTooLargeError(f"{name} = {value} exceeds the oracle limit {limit}")


@lru_cache(maxsize=64)
def compositions(n: int, m: int) -> np.ndarray:
    '''All length-``m`` nonnegative integer vectors summing to ``n``.'''
    _guard("parties", m, MAX_PARTIES)
    _guard("final vote vectors", comb(n + m - 1, m - 1), MAX_STATES)
    if m == 1:
        return np.array([[n]], dtype=np.int64)
    rows = []
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(n + m - 2 - prev)
        rows.append(row)
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=512)
def _outcomes(n: int, m: int, seats: int, method: Method, tau: int) -> np.ndarray:
    comp = compositions(n, m)
    out = np.array([seat_outcome(row, seats, method, tau) for row in comp.tolist()], dtype=np.int64)
    out.setflags(write=False)
    return out


def _mask(table: np.ndarray, target: int, objective: str, direction: str, level) -> np.ndarray:
    mine = table[:, target]
    if objective == SEATS:
        return mine >= level if direction == CONSTRUCTIVE else mine <= level
    others = np.delete(table, target, axis=1)
    best = others.max(axis=1) if others.shape[1] else np.full(len(table), -1)
    if direction == CONSTRUCTIVE:
        return mine > np.maximum(best, 0)
    return best > mine


def _top_choice_search(inst: BriberyInstance, restricted: bool):
    votes = np.array(inst.votes, dtype=np.int64)
    comp = compositions(int(votes.sum()), len(votes))
    table = _outcomes(int(votes.sum()), len(votes), inst.seats, inst.method, inst.tau)
    ok = _mask(table, inst.target, inst.objective, inst.direction, inst.level)
    if restricted:
        # only moves into the distinguished party (constructive) or out of it
        rivals = np.delete(comp - votes, inst.target, axis=1)
        ok &= (rivals <= 0).all(axis=1) if inst.constructive else (rivals >= 0).all(axis=1)
    if not ok.any():
        return None, None
    cost = np.maximum(votes - comp, 0).sum(axis=1)
    cost = np.where(ok, cost, np.iinfo(np.int64).max)
    best = int(np.argmin(cost))
    return int(cost[best]), tuple(int(x) for x in comp[best])


def oracle_min_budget(inst: BriberyInstance, restricted: bool = False):
    '''Minimal number of vote changes meeting the objective.

    Returns ``(budget, final_votes)``, or ``(None, None)`` when no final
    vote vector works.  With ``restricted`` set, only final vectors that
    move votes into the distinguished party (constructive) or out of it
    (destructive) are considered.
    '''
    if inst.ballots is not None:
        raise ValueError("use the second-chance oracle for ranked instances")
    return _top_choice_search(inst, restricted)


def oracle_decide_top_choice(inst: BriberyInstance):
    """Decision for ``inst.budget`` plus the optimal budget (``None`` if infeasible)."""
    best, final = oracle_min_budget(inst)
    if best is None or best > inst.budget:
        return Decision(False), best
    return Decision(True, CampaignPlan.from_vectors(inst.votes, final)), best


# --- multi-district -------------------------------------------------------

def district_options(votes: Sequence[int], seats: int, method: Method, tau: int, budget: int) -> dict:
    '''Every seat vector reachable in one district within ``budget``.

    Maps seat vector -> (min cost, final vote vector).
    '''
    votes = np.array(votes, dtype=np.int64)
    n = int(votes.sum())
    comp = compositions(n, len(votes))
    table = _outcomes(n, len(votes), seats, method, tau)
    cost = np.maximum(votes - comp, 0).sum(axis=1)
    out: dict = {}
    for idx in np.flatnonzero(cost <= budget):
        key = tuple(int(x) for x in table[idx])
        c = int(cost[idx])
        if key not in out or c < out[key][0]:
            out[key] = (c, tuple(int(x) for x in comp[idx]))
    return out


def multi_district_min_budget(districts, method: Method, target: int, objective: str,
                              direction: str, level=None, budget_cap: Optional[int] = None):
    '''Exhaustive multi-district search.

    ``districts`` is a sequence of ``(votes, seats, tau)`` triples.  Only
    per-district options costing at most ``budget_cap`` are combined
    (default: unbounded, i.e. the total number of ballots).  Returns
    ``(budget, plan)`` or ``(None, None)``.
    '''
    from .problem import objective_met

    if budget_cap is None:
        budget_cap = sum(sum(v) for v, _, _ in districts)
    _guard("districts", len(districts), 4)
    frontier = {(0,) * len(districts[0][0]): (0, ())}
    for d, (votes, seats, tau) in enumerate(districts):
        opts = district_options(votes, seats, method, tau, budget_cap)
        nxt: dict = {}
        for key, (c0, finals) in frontier.items():
            for sv, (c1, final) in opts.items():
                c = c0 + c1
                if c > budget_cap:
                    continue
                k2 = tuple(a + b for a, b in zip(key, sv))
                if k2 not in nxt or c < nxt[k2][0]:
                    nxt[k2] = (c, finals + (final,))
        _guard("aggregate seat states", len(nxt), MAX_STATES)
        frontier = nxt
    best = None
    for key, (c, finals) in frontier.items():
        if objective_met(key, target, objective, direction, level) and (best is None or c < best[0]):
            best = (c, finals)
    if best is None:
        return None, None
    moves = []
    for d, ((votes, _, _), final) in enumerate(zip(districts, best[1])):
        moves.extend(CampaignPlan.from_vectors(votes, final, d).moves)
    return best[0], CampaignPlan(tuple(moves))


# --- second chance --------------------------------------------------------

def _ballot_types(m: int) -> list:
    return list(itertools.permutations(range(m)))


def _sub_multisets(counts: Sequence[int], k: int):
    '''All vectors r with 0 <= r_i <= counts_i and sum(r) == k.'''
    def rec(i, left):
        if i == len(counts):
            if left == 0:
                yield ()
            return
        for x in range(min(counts[i], left) + 1):
            for rest in rec(i + 1, left - x):
                yield (x,) + rest
    return rec(0, k)


def _ranked_ok(inst: BriberyInstance, counts: Sequence[int], types: list) -> bool:
    prof = RankedProfile(tuple((t, c) for t, c in zip(types, counts) if c), inst.ballots.parties)
    return inst.satisfied(ranked_outcome(prof, inst.seats, inst.method, inst.tau))


def _check_ranked_guard(inst: BriberyInstance, k: int) -> None:
    if inst.ballots is None:
        raise ValueError("second-chance oracle needs a ranked profile")
    _guard("parties", inst.ballots.parties, 4)
    _guard("ballots", inst.ballots.total, 12)
    _guard("budget", k, 5)


@lru_cache(maxsize=512)
def _ranked_outcomes(total: int, m: int, seats: int, method: Method, tau: int) -> np.ndarray:
    # seat outcome of every final profile, one column per ballot type
    types = _ballot_types(m)
    rows = []
    for counts in compositions(total, len(types)).tolist():
        prof = RankedProfile(tuple((t, c) for t, c in zip(types, counts) if c), m)
        rows.append(ranked_outcome(prof, seats, method, tau))
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


def second_chance_min_budget(inst: BriberyInstance, max_budget: Optional[int] = None):
    '''Cheapest ballot rewrite meeting the objective in second-chance mode.

    Rewriting ballots turns the profile (counts per ranking) into another
    profile of the same size at cost ``sum(max(0, before - after))``.  With
    up to three parties every final profile is tabulated; otherwise the
    rewrites are enumerated by budget 0, 1, ... up to ``max_budget``
    (default: the instance budget).  Returns ``(budget, plan)`` or
    ``(None, None)``.
    '''
    k_max = inst.budget if max_budget is None else max_budget
    _check_ranked_guard(inst, k_max)
    m = inst.ballots.parties
    types = _ballot_types(m)
    index = {t: i for i, t in enumerate(types)}
    base = [0] * len(types)
    for r, c in inst.ballots.ballots:
        base[index[r]] += c
    if len(types) <= MAX_PARTIES:
        return _tabulated_min(inst, k_max, base, types)
    return _enumerated_min(inst, k_max, base, types)


def _tabulated_min(inst, k_max, base, types):
    total = sum(base)
    comp = compositions(total, len(types))
    table = _ranked_outcomes(total, inst.ballots.parties, inst.seats, inst.method, inst.tau)
    cost = np.maximum(np.array(base) - comp, 0).sum(axis=1)
    ok = _mask(table, inst.target, inst.objective, inst.direction, inst.level) & (cost <= k_max)
    if not ok.any():
        return None, None
    best = int(np.argmin(np.where(ok, cost, np.iinfo(np.int64).max)))
    final = comp[best].tolist()
    removed = [max(0, b - f) for b, f in zip(base, final)]
    added = [max(0, f - b) for b, f in zip(base, final)]
    return int(cost[best]), _rewrite_plan(types, removed, added)


def _enumerated_min(inst, k_max, base, types):
    for k in range(min(k_max, sum(base)) + 1):
        for removed in _sub_multisets(base, k):
            for added in _sub_multisets([k] * len(types), k):
                final = [b - r + a for b, r, a in zip(base, removed, added)]
                if _ranked_ok(inst, final, types):
                    return k, _rewrite_plan(types, removed, added)
    return None, None


def _rewrite_plan(types, removed, added) -> CampaignPlan:
    # report moves by top choice; this is a summary, the ranking detail
    # of the rewritten ballots is not representable in a count plan
    src = [t[0] for t, r in zip(types, removed) for _ in range(r)]
    dst = [t[0] for t, a in zip(types, added) for _ in range(a)]
    moves = [Move(s, d, 1) for s, d in zip(src, dst) if s != d]
    return CampaignPlan(tuple(moves))


def oracle_decide_second_chance(inst: BriberyInstance):
    best, plan = second_chance_min_budget(inst)
    return Decision(best is not None, plan), best


def voterwise_second_chance_min_budget(inst: BriberyInstance, max_budget: int) -> Optional[int]:
    '''Independent enumerator working on individual voters.

    Tries every set of at most ``max_budget`` voters and every assignment
    of rankings to them.  Much slower than ``second_chance_min_budget``;
    meant only for cross-checking on tiny fixtures.
    '''
    _check_ranked_guard(inst, max_budget)
    m = inst.ballots.parties
    voters = [r for r, c in inst.ballots.ballots for _ in range(c)]
    perms = _ballot_types(m)
    for k in range(min(max_budget, len(voters)) + 1):
        for chosen in itertools.combinations(range(len(voters)), k):
            for new in itertools.product(perms, repeat=k):
                ballots = list(voters)
                for pos, r in zip(chosen, new):
                    ballots[pos] = r
                prof = RankedProfile(tuple((b, 1) for b in ballots), m)
                if inst.satisfied(ranked_outcome(prof, inst.seats, inst.method, inst.tau)):
                    return k
    return None
