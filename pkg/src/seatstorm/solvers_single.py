"""Exact bribery solvers for one top-choice district.

A bribe moves a voter's top choice from one party to another; since voters
with the same top choice are interchangeable, a plan is a vector of moved
vote counts and costs the number of moved votes.

Seat objectives (P* gets at least / at most ``level`` seats) use the
removal-table dynamic programs: all bought votes go to P* (constructive) or
leave P* (destructive), and each rival's table lists how many of its
fraction-list entries (or largest-remainder seats) may end up ahead of
P*'s decisive seat at what cost.  Winner objectives use the pivot-guess
engines in ``_pivot``.
"""
from __future__ import annotations

import math
from dataclasses import replace
from typing import Optional

from . import _pivot
from .core import Method
from .problem import (
    CONSTRUCTIVE,
    SEATS,
    WINNER,
    BriberyInstance,
    CampaignPlan,
    Decision,
)

__all__ = [
    "UNBOUNDED",
    "phi_constructive",
    "gamma_table",
    "fptp_ab",
    "fptp_dab",
    "fptp_win_cost",
    "divisor_ab",
    "divisor_dab",
    "lrm_ab",
    "lrm_dab",
    "winner_ab",
    "winner_dab_divisor",
    "winner_dab_lrm",
    "strongest_rival_transfer",
    "solve",
    "min_budget",
    "max_seat_delta",
]

# marker for "no finite number of moves works"
UNBOUNDED = math.inf


def _unpack(inst: BriberyInstance):
    p = list(inst.votes)
    return p, inst.target, inst.seats, max(inst.tau, 1), sum(p)


def _yes(inst: BriberyInstance, final) -> Decision:
    return Decision(True, CampaignPlan.from_vectors(inst.votes, final))


def _drain(final: list, parties, amount: int) -> None:
    # take `amount` more votes from `parties`, richest first
    for i in sorted(parties, key=lambda j: (-final[j], j)):
        if amount <= 0:
            break
        take = min(final[i], amount)
        final[i] -= take
        amount -= take


def phi_constructive(y: int, q: int, level: int, tau: int, seq, rival_first: bool, seats: int) -> int:
    '''Fraction-list entries of a rival with support ``y`` ahead of P*'s ``level``-th seat.

    P* has support ``q``.  ``rival_first`` says the rival precedes P* in
    tie-break order, so an equal fraction counts as ahead.
    '''
    fr = _pivot.Fractions(seq, seats)
    return _pivot.entries_beating(fr, y, max(tau, 1), q * fr.den[level - 1], fr.num[level - 1], rival_first)


def gamma_table(inst: BriberyInstance) -> dict:
    '''Per-rival removal tables for a divisor seat instance.

    Constructive: ``{rival: [(x, cost), ...]}`` where ``cost`` is the
    fewest votes to take from the rival so that at most ``x`` of its
    entries stay ahead of P*'s ``level``-th seat.  Destructive: the fewest
    votes to add so that at least ``x`` entries get ahead of P*'s
    ``level+1``-th seat.  Only pairs within the effective budget are kept.
    '''
    p, t, k, te, n = _unpack(inst)
    fr = _pivot.Fractions(inst.method.divisors, k)
    if inst.constructive:
        kk = min(inst.budget, n - p[t])
        q = p[t] + kk
        vn, vd = q * fr.den[inst.level - 1], fr.num[inst.level - 1]
    else:
        kk = min(inst.budget, p[t]) if len(p) > 1 else 0
        q = p[t] - kk
        vn, vd = q * fr.den[inst.level], fr.num[inst.level]
    table = {}
    for r in range(len(p)):
        if r == t:
            continue
        rows = []
        if inst.constructive:
            top = _pivot.entries_beating(fr, p[r], te, vn, vd, r < t)
            for x in range(top + 1):
                _, hi = _pivot.divisor_level(fr, x, te, vn, vd, r < t, n + 1)
                cost = max(0, p[r] - hi)
                if cost <= kk:
                    rows.append((x, cost))
        else:
            for x in range(k - inst.level + 1):
                lo, _ = _pivot.divisor_level(fr, x, te, vn, vd, r < t, n + 1)
                cost = max(0, lo - p[r])
                if cost <= kk:
                    rows.append((x, cost))
        table[r] = rows
    return table


# --- first past the post -------------------------------------------------

def fptp_win_cost(votes, party: int, tau: int) -> Optional[tuple]:
    '''Cheapest way to make ``party`` the strict FPTP winner.

    Returns ``(cost, final_votes)`` with every moved vote going to
    ``party``, or None when the threshold is out of reach.
    '''
    p = list(votes)
    n = sum(p)
    te = max(tau, 1)

    def removal(y):
        return sum(max(0, p[j] - (y - 1 if j < party else y)) for j in range(len(p)) if j != party)

    lo = max(p[party], te)
    if lo > n:
        return None
    hi = n
    if lo - p[party] < removal(lo):
        # y - p - removal(y) is strictly increasing in y
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if mid - p[party] >= removal(mid):
                hi = mid
            else:
                lo = mid
        lo = hi
    y = lo
    final = [min(v, y - 1 if j < party else y) for j, v in enumerate(p)]
    final[party] = p[party]
    _drain(final, [j for j in range(len(p)) if j != party], y - p[party] - (sum(p) - sum(final)))
    final[party] = y
    return y - p[party], tuple(final)


def fptp_ab(inst: BriberyInstance) -> Decision:
    '''Constructive FPTP: all votes bought go to P*, taken from the strongest rivals.

    Equivalent to moving one vote at a time from the currently strongest
    rival; P* must end as the strict winner (seat targets ``>= 1`` and the
    winner objective coincide under FPTP).
    '''
    p, t, k, te, n = _unpack(inst)
    kk = min(inst.budget, n - p[t])
    q = p[t] + kk
    if q < te:
        return Decision(False)
    final = [min(v, q - 1 if j < t else q) for j, v in enumerate(p)]
    used = n - sum(final)
    if used > kk:
        return Decision(False)
    final[t] = p[t]
    _drain(final, [j for j in range(len(p)) if j != t], kk - used)
    final[t] = q
    return _yes(inst, final)


def fptp_dab(inst: BriberyInstance) -> Decision:
    '''Destructive FPTP.

    Seat objective: P* must lose its seats (or ``level == seats``), which
    the strongest-rival transfer decides exactly.  Winner objective: some
    rival must win outright, so the cheapest rival takeover over all
    rivals is used; the plain transfer from P* misses cases where P* lacks
    the votes or nobody qualifies.
    '''
    p, t, k, te, n = _unpack(inst)
    if inst.objective == SEATS:
        if inst.level >= k or inst.satisfied(inst.outcome()):
            return Decision(True, CampaignPlan())
        if len(p) == 1:
            return Decision(False)
        kk = min(inst.budget, p[t])
        r1 = max((j for j in range(len(p)) if j != t), key=lambda j: (p[j], -j))
        final = list(p)
        final[t] -= kk
        final[r1] += kk
        if final[t] < te or final[r1] > final[t] or (final[r1] == final[t] and r1 < t):
            return _yes(inst, final)
        return Decision(False)
    best = None
    for r in range(len(p)):
        if r == t:
            continue
        got = fptp_win_cost(p, r, inst.tau)
        if got and got[0] <= inst.budget and (best is None or got[0] < best[0]):
            best = got
    if best is None:
        return Decision(False)
    return _yes(inst, best[1])


# --- divisor methods -----------------------------------------------------

def divisor_ab(inst: BriberyInstance) -> Decision:
    '''Constructive seat bribery for divisor methods.

    P* gets every bought vote; a min-plus table over the rivals finds the
    cheapest removals leaving at most ``seats - level`` rival entries ahead
    of P*'s ``level``-th entry.
    '''
    p, t, k, te, n = _unpack(inst)
    kk = min(inst.budget, n - p[t])
    if p[t] + kk < te:
        return Decision(False)
    room = k - inst.level
    table = gamma_table(inst)
    # best[s] = (cost, picks) with rival entries summing to s
    best = {0: (0, ())}
    for r, rows in table.items():
        nxt = {}
        for s, (c, picks) in best.items():
            for x, cost in rows:
                s2, c2 = s + x, c + cost
                if s2 <= room and c2 <= kk and (s2 not in nxt or c2 < nxt[s2][0]):
                    nxt[s2] = (c2, picks + ((r, cost),))
        best = nxt
        if not best:
            return Decision(False)
    cost, picks = min(best.values())
    final = list(p)
    for r, c in picks:
        final[r] -= c
    _drain(final, [r for r in table], kk - cost)
    final[t] = p[t] + kk
    return _yes(inst, final)


def divisor_dab(inst: BriberyInstance) -> Decision:
    '''Destructive seat bribery for divisor methods.

    Every bought vote leaves P*; rivals absorb them so that at least
    ``seats - level`` rival entries get ahead of P*'s ``level+1``-th entry.
    '''
    p, t, k, te, n = _unpack(inst)
    if inst.level >= k:
        return Decision(True, CampaignPlan())
    rivals = [r for r in range(len(p)) if r != t]
    kk = min(inst.budget, p[t]) if rivals else 0
    q = p[t] - kk
    if q < te:
        final = list(p)
        final[t] = q
        if rivals:
            final[rivals[0]] += kk
        return _yes(inst, final)
    need = k - inst.level
    table = gamma_table(inst)
    best = {0: (0, ())}
    for r, rows in table.items():
        nxt = {}
        for s, (c, picks) in best.items():
            for x, cost in rows:
                s2, c2 = min(s + x, need), c + cost
                if c2 <= kk and (s2 not in nxt or c2 < nxt[s2][0]):
                    nxt[s2] = (c2, picks + ((r, cost),))
        best = nxt
    if need not in best:
        return Decision(False)
    cost, picks = best[need]
    final = list(p)
    for r, c in picks:
        final[r] += c
    final[rivals[0]] += kk - cost
    final[t] = q
    return _yes(inst, final)


# --- largest remainder ---------------------------------------------------

def lrm_ab(inst: BriberyInstance) -> Decision:
    '''Constructive seat bribery for the largest-remainder method.

    All bought votes go to P*.  The qualifying total ``nn`` after bribery
    is enumerated; for each value, rivals either stay above the threshold
    with a bounded number of seats ahead of P*'s remainder or are pushed
    below it, and a small table maximises how much support the survivors
    may keep.
    '''
    p, t, k, te, n = _unpack(inst)
    ell = inst.level
    kk = min(inst.budget, n - p[t])
    q = p[t] + kk
    if q < te:
        return Decision(False)
    above = [r for r in range(len(p)) if r != t and p[r] >= te]
    below = [r for r in range(len(p)) if r != t and p[r] < te]
    low = sum(p[r] for r in below)
    for nn in range(q, n + 1):
        lq, rem = divmod(k * q, nn)
        if lq < ell - 1:
            break
        limit = k if lq >= ell else k - ell
        # (seats ahead, survivors) -> (max survivor support, picks)
        dp = {(0, 0): (0, ())}
        for r in above:
            c = rem + 1 if r > t else rem
            nxt = {}

            def put(key, h, picks):
                if key not in nxt or h > nxt[key][0]:
                    nxt[key] = (h, picks)

            for (s, cnt), (h, picks) in dp.items():
                put((s, cnt), h, picks + ((r, None),))
                if lq >= ell:
                    put((s, cnt + 1), h + p[r], picks + ((r, p[r]),))
                    continue
                for x in range(limit - s + 1):
                    cap = min(p[r], _pivot.lrm_level(x, nn, k, c)[1])
                    if cap >= te:
                        put((s + x, cnt + 1), h + cap, picks + ((r, cap),))
                    if cap == p[r]:
                        break
            dp = nxt
        surv = nn - q
        for (s, cnt), (h, picks) in sorted(dp.items()):
            if not cnt * te <= surv <= h:
                continue
            if n - nn > low + (len(above) - cnt) * (te - 1):
                continue
            final = [0] * len(p)
            final[t] = q
            keep, caps, push, pcaps = [], [], [], []
            for r, cap in picks:
                if cap is None:
                    push.append(r)
                    pcaps.append(te - 1)
                else:
                    final[r] = te
                    keep.append(r)
                    caps.append(cap)
            _pivot._fill(final, keep, caps, surv - cnt * te)
            _pivot._fill(final, push + below, pcaps + [p[r] for r in below], n - nn)
            return _yes(inst, final)
    return Decision(False)


def lrm_dab(inst: BriberyInstance) -> Decision:
    '''Destructive seat bribery for the largest-remainder method.

    Every bought vote leaves P*.  The qualifying total is enumerated; rivals
    below the threshold may be lifted above it, and a table over the rivals
    finds the least support needed for enough rival seats ahead of P*'s
    remainder.
    '''
    p, t, k, te, n = _unpack(inst)
    ell = inst.level
    if ell >= k:
        return Decision(True, CampaignPlan())
    rivals = [r for r in range(len(p)) if r != t]
    kk = min(inst.budget, p[t]) if rivals else 0
    q = p[t] - kk
    if q < te:
        final = list(p)
        final[t] = q
        if rivals:
            final[rivals[0]] += kk
        return _yes(inst, final)
    base = q + sum(p[r] for r in rivals if p[r] >= te)
    for nn in range(base, n + 1):
        lq, rem = divmod(k * q, nn)
        if lq > ell:
            continue
        need = 0 if lq < ell else k - ell
        # (seats ahead, rivals left below, their support) -> (least survivor support, picks)
        dp = {(0, 0, 0): (0, ())}
        for r in rivals:
            c = rem + 1 if r > t else rem
            nxt = {}

            def put(key, lowsum, picks):
                if key not in nxt or lowsum < nxt[key][0]:
                    nxt[key] = (lowsum, picks)

            for (s, j, held), (lowsum, picks) in dp.items():
                if p[r] < te:
                    put((s, j + 1, held + p[r]), lowsum, picks + ((r, None),))
                for x in range(need - s + 1):
                    # least support giving at least x seats ahead of P*
                    y = max(p[r], te, _pivot.lrm_level(x, nn, k, c)[0])
                    put((s + x, j, held), lowsum + y, picks + ((r, y),))
            dp = nxt
        spare = n - nn
        for (s, j, held), (lowsum, picks) in sorted(dp.items()):
            if s < need or lowsum > nn - q or not held <= spare <= j * (te - 1):
                continue
            if lowsum == 0 and nn != q:
                continue
            final = list(p)
            final[t] = q
            keep, low_idx = [], []
            for r, y in picks:
                if y is None:
                    low_idx.append(r)
                else:
                    final[r] = y
                    keep.append(r)
            if keep:
                final[keep[0]] += nn - q - lowsum
            _pivot._fill(final, low_idx, [te - 1] * len(low_idx), spare - held)
            return _yes(inst, final)
    return Decision(False)


# --- winner objectives ---------------------------------------------------

def winner_ab(inst: BriberyInstance) -> Decision:
    '''Make P* the strict seat winner.

    Every bought vote goes to P*, up to the budget.  The engine guesses
    the last awarded entry (divisor methods) or the qualifying total plus
    the last remainder seat (largest remainder), then runs a knapsack over
    the rivals with a removal total in the range allowed by P*'s seat
    count.

    Only moves into P* are searched.  With four or more seats a cheaper
    campaign can exist that also shifts votes between rivals, e.g.
    (0, 1, 1, 8, 0) with 4 D'Hondt seats and P* second: 4 changes
    suffice, this solver needs 5.
    '''
    if inst.method.kind == "fptp":
        return fptp_ab(inst)
    p, t, k, te, n = _unpack(inst)
    if inst.satisfied(inst.outcome()):
        return Decision(True, CampaignPlan())
    amount = min(inst.budget, n - p[t])
    if inst.method.kind == "divisor":
        final = _pivot.divisor_gain(p, t, amount, k, te, _pivot.Fractions(inst.method.divisors, k))
    else:
        final = _pivot.lrm_gain(p, t, amount, k, te)
    return _yes(inst, final) if final else Decision(False)


def _winner_dab(inst: BriberyInstance, gain, loss) -> Decision:
    p, t, k, te, n = _unpack(inst)
    if inst.satisfied(inst.outcome()):
        return Decision(True, CampaignPlan())
    if len(p) == 1:
        return Decision(False)
    # either every bought vote leaves P*, or every bought vote joins one rival
    final = loss(p, t, min(inst.budget, p[t]))
    if final:
        return _yes(inst, final)
    for r in range(len(p)):
        if r != t:
            final = gain(p, r, min(inst.budget, n - p[r]), t)
            if final:
                return _yes(inst, final)
    return Decision(False)


def winner_dab_divisor(inst: BriberyInstance) -> Decision:
    '''Some rival must end with strictly more seats than P* (divisor methods).'''
    k, te = inst.seats, max(inst.tau, 1)
    fr = _pivot.Fractions(inst.method.divisors, k)
    return _winner_dab(
        inst,
        lambda p, r, a, v: _pivot.divisor_gain(p, r, a, k, te, fr, victim=v),
        lambda p, t, a: _pivot.divisor_loss(p, t, a, k, te, fr),
    )


def winner_dab_lrm(inst: BriberyInstance) -> Decision:
    '''Some rival must end with strictly more seats than P* (largest remainder).'''
    k, te = inst.seats, max(inst.tau, 1)
    return _winner_dab(
        inst,
        lambda p, r, a, v: _pivot.lrm_gain(p, r, a, k, te, victim=v),
        lambda p, t, a: _pivot.lrm_loss(p, t, a, k, te),
    )


def strongest_rival_transfer(inst: BriberyInstance) -> Decision:
    '''Quick destructive-winner strategy: feed the strongest rival.

    Votes go from P* to the strongest rival (extra budget beyond P*'s
    votes is drawn from the other rivals, weakest first).  Under the
    largest-remainder method, pushing the smallest qualifying rivals below
    the threshold into the strongest rival is tried as well.  A YES is
    always correct; a NO is not conclusive.
    '''
    p, t, k, te, n = _unpack(inst)
    if inst.satisfied(inst.outcome()):
        return Decision(True, CampaignPlan())
    rivals = sorted((r for r in range(len(p)) if r != t), key=lambda r: (-p[r], r))
    if not rivals:
        return Decision(False)
    top, rest = rivals[0], rivals[1:]
    budget = min(inst.budget, n - p[top])
    pushes = [[]]
    if inst.method.kind == "lrm":
        small = sorted((r for r in rest if p[r] >= te), key=lambda r: (p[r], r))
        pushes += [small[:j] for j in range(1, len(small) + 1)]
    for pushed in pushes:
        final = list(p)
        left = budget
        for r in pushed:
            c = p[r] - te + 1
            final[r] -= c
            left -= c
        if left < 0:
            break
        take = min(left, final[t])
        final[t] -= take
        left -= take
        for r in reversed(rest):
            take = min(left, final[r])
            final[r] -= take
            left -= take
        final[top] = n - sum(final) + final[top]
        if inst.satisfied(inst.outcome(final)):
            return _yes(inst, final)
    return Decision(False)


# --- dispatch and search -------------------------------------------------

def solve(inst: BriberyInstance) -> Decision:
    '''Decide a top-choice instance with the matching exact solver.'''
    if inst.ballots is not None:
        raise ValueError("second-chance instances are only solvable by the oracle")
    kind = inst.method.kind
    if inst.objective == WINNER:
        if inst.constructive:
            return winner_ab(inst)
        if kind == "fptp":
            return fptp_dab(inst)
        return winner_dab_divisor(inst) if kind == "divisor" else winner_dab_lrm(inst)
    if kind == "fptp":
        return fptp_ab(inst) if inst.constructive else fptp_dab(inst)
    if kind == "divisor":
        return divisor_ab(inst) if inst.constructive else divisor_dab(inst)
    return lrm_ab(inst) if inst.constructive else lrm_dab(inst)


def min_budget(inst: BriberyInstance, solver=solve, max_budget: Optional[int] = None):
    '''Smallest budget with a YES decision, by binary search.

    Searches ``[0, max_budget]`` (default: every ballot).  Returns
    ``(budget, decision)``; the budget is None when even the largest budget
    fails.
    '''
    hi = inst.n if max_budget is None else min(max_budget, inst.n)
    top = solver(inst.with_budget(hi))
    if not top:
        return None, top
    lo = -1  # invariant: lo fails (or is below 0), hi succeeds
    best = top
    while hi - lo > 1:
        mid = (lo + hi) // 2
        d = solver(inst.with_budget(mid))
        if d:
            hi, best = mid, d
        else:
            lo = mid
    return hi, best


def max_seat_delta(inst: BriberyInstance, budget: Optional[int] = None, solver=solve) -> int:
    '''Most seats P* can gain (constructive) or be made to lose (destructive).

    ``inst.level`` is ignored; the budget defaults to ``inst.budget``.
    '''
    k = inst.seats
    budget = inst.budget if budget is None else budget
    current = inst.outcome()[inst.target]

    def at(level):
        return replace(inst, objective=SEATS, level=level, budget=budget)

    if inst.direction == CONSTRUCTIVE:
        lo, hi = current, k  # lo reachable
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if solver(at(mid)):
                lo = mid
            else:
                hi = mid - 1
        return lo - current
    lo, hi = 0, current  # hi reachable
    while lo < hi:
        mid = (lo + hi) // 2
        if solver(at(mid)):
            hi = mid
        else:
            lo = mid + 1
    return current - lo
