"""Cross-checks of the polynomial solvers against the brute-force oracle."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .alloc import RankedProfile
from .core import DivisorSequence, Method
from .oracle import (
    _ballot_types,
    _enumerated_min,
    _mask,
    _outcomes,
    compositions,
    oracle_min_budget,
    second_chance_min_budget,
)
from .problem import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    SEATS,
    WINNER,
    BriberyInstance,
    District,
    Election,
    objective_met,
    seat_outcome,
)
from .solvers_multi import dmab, fptp_dmawb, mab, winner_multi_search
from .solvers_single import min_budget, solve

__all__ = ["CheckReport", "METHODS", "problem_specs", "single_district_check", "random_election",
           "multi_district_check", "restriction_check", "second_chance_check", "PROPERTIES", "property_check"]

METHODS = {
    "dhondt": Method.dhondt(),
    "sainte-lague": Method.sainte_lague(),
    "lrm": Method.lrm(),
    "fptp": Method.fptp(),
}


@dataclass
class CheckReport:
    total: int = 0
    mismatches: list = field(default_factory=list)
    bad_plans: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.bad_plans

    def summary(self) -> str:
        if self.ok:
            return f"all {self.total} instances agree"
        return f"{len(self.mismatches)} mismatches and {len(self.bad_plans)} invalid plans in {self.total} instances"


def problem_specs(seats: int, objectives=("seats", "winner"), directions=(CONSTRUCTIVE, DESTRUCTIVE)):
    """(objective, direction, level) triples with every valid seat level."""
    out = []
    for obj in objectives:
        for dr in directions:
            if obj == SEATS:
                lo = 1 if dr == CONSTRUCTIVE else 0
                out.extend((SEATS, dr, lv) for lv in range(lo, seats + 1))
            else:
                out.append((WINNER, dr, None))
    return out


def single_district_check(methods: Iterable[Method], parties=(2, 3, 4), max_votes: int = 12,
                          seats=(1, 2, 3), taus=(0, 2, 3), budgets=range(4),
                          objectives=("seats", "winner"), directions=(CONSTRUCTIVE, DESTRUCTIVE),
                          check_plans: bool = True) -> CheckReport:
    '''Exhaustive grid: every vote vector, party, seat count, threshold, goal and budget.

    A mismatch is a solver decision differing from the oracle; a bad plan
    is a YES whose witness does not replay to a satisfied goal within the
    budget.
    '''
    rep = CheckReport()
    budgets = list(budgets)
    for method in methods:
        for m in parties:
            for n in range(max_votes + 1):
                comp = compositions(n, m)
                for k in seats:
                    specs = problem_specs(k, objectives, directions)
                    for tau in taus:
                        table = _outcomes(n, m, k, method, tau)
                        for row in comp.tolist():
                            cost = np.maximum(np.array(row) - comp, 0).sum(axis=1)
                            for t in range(m):
                                for obj, dr, lv in specs:
                                    ok = _mask(table, t, obj, dr, lv)
                                    best = int(cost[ok].min()) if ok.any() else None
                                    for b in budgets:
                                        inst = BriberyInstance(tuple(row), k, method, t, tau, obj, dr, lv, b)
                                        d = solve(inst)
                                        rep.total += 1
                                        if bool(d) != (best is not None and best <= b):
                                            rep.mismatches.append(inst)
                                        elif d and check_plans and not inst.check_plan(d.plan):
                                            rep.bad_plans.append(inst)
    return rep


def random_election(rng: random.Random, districts=(2, 3), parties=(2, 3, 4), max_votes: int = 8,
                    max_seats: int = 3, taus=(0, 2, 3)) -> Election:
    q = rng.choice(list(districts))
    m = rng.choice(list(parties))
    tau = rng.choice(list(taus))
    ds = []
    for j in range(q):
        n = rng.randint(0, max_votes)
        cuts = sorted(rng.randint(0, n) for _ in range(m - 1))
        votes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        ds.append(District(tuple(votes), rng.randint(1, max_seats), tau, name=str(j)))
    return Election(tuple(f"P{i + 1}" for i in range(m)), tuple(ds))


def multi_district_check(samples: int, seed: int = 0, methods: Optional[Sequence[Method]] = None,
                         max_budget: int = 3) -> CheckReport:
    '''Seeded random multi-district elections: MAB, DMAB and FPTP-DMAWB vs exhaustive search.'''
    rng = random.Random(seed)
    methods = list(METHODS.values()) if methods is None else list(methods)
    rep = CheckReport()
    for _ in range(samples):
        e = random_election(rng)
        m = len(e.parties)
        for t in range(m):
            for b in range(max_budget + 1):
                for method in methods:
                    for dr, solver, levels in ((CONSTRUCTIVE, mab, range(1, e.seats + 1)),
                                               (DESTRUCTIVE, dmab, range(0, e.seats + 1))):
                        for lv in levels:
                            d = solver(e, t, lv, b, method)
                            o = winner_multi_search(e, t, b, method, dr, SEATS, lv)
                            rep.total += 1
                            if bool(d) != bool(o):
                                rep.mismatches.append((e, t, lv, b, method.label, dr))
                            elif d and not _replay(e, d.plan, t, method, SEATS, dr, lv, b):
                                rep.bad_plans.append((e, t, lv, b, method.label, dr))
                    if method.kind == "fptp":
                        d = fptp_dmawb(e, t, b)
                        o = winner_multi_search(e, t, b, method, DESTRUCTIVE)
                        rep.total += 1
                        if bool(d) != bool(o):
                            rep.mismatches.append((e, t, None, b, "fptp-winner", DESTRUCTIVE))
                        elif d and not _replay(e, d.plan, t, method, WINNER, DESTRUCTIVE, None, b):
                            rep.bad_plans.append((e, t, None, b, "fptp-winner", DESTRUCTIVE))
    return rep


def _replay(election: Election, plan, target, method, objective, direction, level, budget) -> bool:
    if plan.cost > budget:
        return False
    total = [0] * len(election.parties)
    for j, d in enumerate(election.districts):
        try:
            votes = plan.apply(d.votes, j)
        except ValueError:
            return False
        for i, s in enumerate(seat_outcome(votes, d.seats, method, d.tau)):
            total[i] += s
    return objective_met(total, target, objective, direction, level)


def restriction_check(methods: Iterable[Method], parties=(2, 3, 4), max_votes: int = 12, seats=(1, 2, 3),
                      taus=(0, 2, 3), objectives=("seats", "winner"),
                      directions=(CONSTRUCTIVE, DESTRUCTIVE)) -> CheckReport:
    '''Oracle minimum with moves only into (or out of) the target vs the free minimum.'''
    rep = CheckReport()
    for method in methods:
        for m in parties:
            for n in range(max_votes + 1):
                comp = compositions(n, m)
                for k in seats:
                    specs = problem_specs(k, objectives, directions)
                    for tau in taus:
                        table = _outcomes(n, m, k, method, tau)
                        for row in comp.tolist():
                            diff = comp - np.array(row)
                            cost = np.maximum(-diff, 0).sum(axis=1)
                            for t in range(m):
                                rivals = np.delete(diff, t, axis=1)
                                only = {CONSTRUCTIVE: (rivals <= 0).all(axis=1), DESTRUCTIVE: (rivals >= 0).all(axis=1)}
                                for obj, dr, lv in specs:
                                    ok = _mask(table, t, obj, dr, lv)
                                    rep.total += 1
                                    free = cost[ok].min() if ok.any() else None
                                    ok &= only[dr]
                                    tight = cost[ok].min() if ok.any() else None
                                    if free != tight:
                                        rep.mismatches.append((row, k, method.label, t, tau, obj, dr, lv, free, tight))
    return rep


def _profiles(m: int, max_ballots: int):
    types = _ballot_types(m)
    for total in range(max_ballots + 1):
        for counts in compositions(total, len(types)).tolist():
            yield RankedProfile(tuple((t, c) for t, c in zip(types, counts) if c), m)


def second_chance_check(methods: Iterable[Method], parties=(2, 3), max_ballots: int = 8, seats=(1, 2, 3),
                        max_budget: int = 3, samples: int = 2000, seed: int = 0) -> CheckReport:
    '''Second-chance oracle on every small ranked profile.

    Without a threshold no ballot is transferred, so the second-chance
    minimum must equal the top-choice minimum on the first preferences
    (compared up to ``max_budget``, which covers every decision with a
    budget in that range).  With thresholds 2 and 3 a seeded sample of
    the same grid is compared with the ballot-by-ballot rewrite
    enumeration.
    '''
    rep = CheckReport()
    rng = random.Random(seed)
    methods = list(methods)
    pool = []
    for m in parties:
        for prof in _profiles(m, max_ballots):
            counts = prof.top_choices().counts
            for k in seats:
                specs = problem_specs(k)
                for method in methods:
                    for t in range(m):
                        for obj, dr, lv in specs:
                            ranked = BriberyInstance((), k, method, t, 0, obj, dr, lv, max_budget, ballots=prof)
                            plain = BriberyInstance(counts, k, method, t, 0, obj, dr, lv, max_budget)
                            a, plan = second_chance_min_budget(ranked)
                            b, _ = oracle_min_budget(plain)
                            b = b if b is not None and b <= max_budget else None
                            rep.total += 1
                            if a != b:
                                rep.mismatches.append((prof, k, method.label, t, obj, dr, lv, a, b))
                            elif a is not None and not ranked.with_budget(a).check_plan(plan):
                                rep.bad_plans.append((prof, k, method.label, t, obj, dr, lv))
                            pool.append((prof, k, method, t, obj, dr, lv))
    for prof, k, method, t, obj, dr, lv in rng.sample(pool, min(samples, len(pool))):
        for tau in (2, 3):
            inst = BriberyInstance((), k, method, t, tau, obj, dr, lv, max_budget, ballots=prof)
            types = _ballot_types(prof.parties)
            index = {r: i for i, r in enumerate(types)}
            base = [0] * len(types)
            for r, c in prof.ballots:
                base[index[r]] += c
            rep.total += 1
            if second_chance_min_budget(inst)[0] != _enumerated_min(inst, max_budget, base, types)[0]:
                rep.mismatches.append((prof, k, method.label, t, tau, obj, dr, lv))
    return rep


# --- randomized properties ------------------------------------------------

# Sainte-Lague with a raised first divisor, as a custom sequence
_MODIFIED = Method.divisor(DivisorSequence.from_values([1, "7/5"] + list(range(3, 80, 2)), "modified"))


def _random_method(rng: random.Random) -> Method:
    return rng.choice([Method.dhondt(), Method.sainte_lague(), Method.lrm(), Method.fptp(),
                       _MODIFIED])


def _random_instance(rng: random.Random, budget=None) -> BriberyInstance:
    m = rng.randint(2, 5)
    votes = tuple(rng.randint(0, 30) for _ in range(m))
    k = rng.randint(1, 6)
    obj, dr, lv = rng.choice(problem_specs(k))
    b = rng.randint(0, 12) if budget is None else budget
    return BriberyInstance(votes, k, _random_method(rng), rng.randrange(m), rng.randint(0, 8), obj, dr, lv, b)


def _budget_monotone(rng):
    if rng.random() < 0.2:
        e = random_election(rng, max_votes=10)
        t, b, method = rng.randrange(len(e.parties)), rng.randint(0, 3), _random_method(rng)
        dr = rng.choice((CONSTRUCTIVE, DESTRUCTIVE))
        lv = rng.randint(1 if dr == CONSTRUCTIVE else 0, e.seats)
        solver = mab if dr == CONSTRUCTIVE else dmab
        return not solver(e, t, lv, b, method) or bool(solver(e, t, lv, b + 1, method)), 1
    inst = _random_instance(rng)
    return not solve(inst) or bool(solve(inst.with_budget(inst.budget + 1))), 1


def _target_monotone(rng):
    inst = _random_instance(rng)
    dr = rng.choice((CONSTRUCTIVE, DESTRUCTIVE))
    lo = 2 if dr == CONSTRUCTIVE else 0
    hi = inst.seats if dr == CONSTRUCTIVE else inst.seats - 1
    if lo > hi:
        return True, 0
    lv = rng.randint(lo, hi)
    base = BriberyInstance(inst.votes, inst.seats, inst.method, inst.target, inst.tau, SEATS, dr, lv, inst.budget)
    nxt = lv - 1 if dr == CONSTRUCTIVE else lv + 1
    easier = BriberyInstance(inst.votes, inst.seats, inst.method, inst.target, inst.tau, SEATS, dr, nxt, inst.budget)
    return not solve(base) or bool(solve(easier)), 1


def _seat_conservation(rng):
    m = rng.randint(1, 8)
    votes = [rng.randint(0, 10_000) if rng.random() > 0.1 else 0 for _ in range(m)]
    k = rng.randint(1, 30)
    tau = rng.choice((0, 1, rng.randint(0, 3000)))
    seats = seat_outcome(votes, k, _random_method(rng), tau)
    qualified = any(v > 0 and v >= max(tau, 1) for v in votes)
    return sum(seats) == (k if qualified else 0) and min(seats) >= 0, 1


def _majority_consistency(rng):
    m = rng.randint(2, 8)
    votes = [rng.randint(0, 200) for _ in range(m)]
    if rng.random() < 0.3:
        votes[rng.randrange(m)] = max(votes)  # ties for the top
    seats = seat_outcome(votes, rng.randint(1, 20), _random_method(rng), rng.randint(0, 60))
    top = max(votes)
    best = max(seats[i] for i in range(m) if votes[i] == top)
    return all(seats[i] <= best for i in range(m) if votes[i] < top), 1


def _witness_replay(rng):
    if rng.random() < 0.2:
        e = random_election(rng, max_votes=10)
        t, b, method = rng.randrange(len(e.parties)), rng.randint(0, 3), _random_method(rng)
        dr = rng.choice((CONSTRUCTIVE, DESTRUCTIVE))
        lv = rng.randint(1 if dr == CONSTRUCTIVE else 0, e.seats)
        d = (mab if dr == CONSTRUCTIVE else dmab)(e, t, lv, b, method)
        if not d:
            return True, 0
        return _replay(e, d.plan, t, method, SEATS, dr, lv, b), 1
    inst = _random_instance(rng, budget=None)
    best, d = min_budget(inst, max_budget=12)
    if best is None:
        return True, 0
    return inst.with_budget(best).check_plan(d.plan), 1


PROPERTIES = {
    "budget monotonicity": _budget_monotone,
    "target monotonicity": _target_monotone,
    "seat conservation": _seat_conservation,
    "majority consistency": _majority_consistency,
    "witness replay": _witness_replay,
}


def property_check(name: str, count: int = 10_000, seed: int = 0) -> CheckReport:
    '''Draw seeded random instances until ``count`` of them exercised the property.'''
    rng = random.Random(f"{name}/{seed}")
    prop = PROPERTIES[name]
    rep = CheckReport()
    while rep.total < count:
        state = rng.getstate()
        ok, used = prop(rng)
        rep.total += used
        if not ok:
            rep.mismatches.append(state)
    return rep
