"""Pivot-guess engines behind the winner solvers.

Every seat allocation of a divisor method is pinned down by its last
awarded entry (the pivot): a party's seat count is the number of its
fraction-list entries that beat the pivot, plus the pivot itself.  For the
largest-remainder method the same role is played by the qualifying total
``nn`` together with the last party receiving a remainder seat.  Once the
pivot is fixed, each party's seat count is a monotone step function of its
own final support, so a knapsack over the parties decides whether a final
vote vector with the required seat pattern exists.

Two one-directional move shapes are covered:

* gain: one party (the beneficiary) receives exactly ``amount`` votes and
  every other party only loses votes;
* loss: one party (the victim) gives away exactly ``amount`` votes and
  every other party only gains votes.

The knapsack keeps, per (seat sum, flag, aux) key, a bitset of reachable
totals, so exact move totals are tracked without enumerating vectors.
"""
from __future__ import annotations

from typing import Optional, Sequence


class Fractions:
    """d_1 .. d_{k+1} as parallel numerator/denominator lists."""

    __slots__ = ("num", "den", "k")

    def __init__(self, seq, k: int):
        ds = seq.prefix(k + 1)
        self.num = [d.numerator for d in ds]
        self.den = [d.denominator for d in ds]
        self.k = k


def entries_beating(fr: Fractions, y: int, te: int, vn: int, vd: int, weak: bool) -> int:
    '''How many of y/d_1 .. y/d_k beat the reference value vn/vd.

    ``weak`` means the party precedes the reference party in tie-break
    order, so an equal fraction also beats it.  Below the effective
    threshold a party has no entries at all.
    '''
    if y < te:
        return 0
    num, den = fr.num, fr.den
    lo, hi = 0, fr.k
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        a = y * den[mid - 1] * vd
        b = vn * num[mid - 1]
        if a > b or (weak and a == b):
            lo = mid
        else:
            hi = mid - 1
    return lo


def divisor_level(fr: Fractions, x: int, te: int, vn: int, vd: int, weak: bool, big: int):
    '''Support interval [lo, hi] giving exactly ``x`` entries beating vn/vd.'''
    if x == 0:
        lo = 0
    else:
        b = vn * fr.num[x - 1]
        a = fr.den[x - 1] * vd
        lo = -(-b // a) if weak else b // a + 1
        if lo < te:
            lo = te
    if x >= fr.k:
        hi = big
    else:
        b = vn * fr.num[x]
        a = fr.den[x] * vd
        hi = (b - 1) // a if weak else b // a
        if x == 0 and hi < te - 1:
            hi = te - 1
    return lo, hi


def lrm_level(x: int, nn: int, k: int, c: int):
    '''Support interval with floor((k*y - c)/nn) + 1 == x.

    With ``c`` equal to the pivot remainder (or one more) this counts lower
    quota plus a remainder seat; ``c == nn`` gives the plain lower quota.
    '''
    lo = 0 if x == 0 else -(-((x - 1) * nn + c) // k)
    hi = (x * nn + c - 1) // k
    return lo, hi


def lrm_seats(y: int, nn: int, k: int, c: int) -> int:
    return (k * y - c) // nn + 1


def spread(mask: int, lo: int, hi: int) -> int:
    '''OR of ``mask << d`` for d in lo..hi.'''
    width = hi - lo + 1
    out = mask
    have = 1
    while have < width:
        step = min(have, width - have)
        out |= out << step
        have += step
    return out << lo


def knapsack(options: Sequence[list], need: int, target: int, accept, low: Optional[int] = None) -> Optional[list]:
    '''Pick one option per party so seat counts sum to ``need`` and amounts to ``target``.

    Options are ``(seats, lo, hi, flag, aux)`` tuples: the party takes
    ``seats`` seats and contributes any amount in ``[lo, hi]``; ``flag`` is
    OR-ed and ``aux`` (a small int tuple) is summed into the state key.
    ``accept(flag, aux)`` filters final keys.  With ``low`` set, any total
    in ``[low, target]`` is accepted.  Returns the chosen
    ``(option, amount)`` per party, or None.
    '''
    if target < 0:
        return None
    low = target if low is None else max(low, 0)
    if low > target:
        return None
    full = (1 << (target + 1)) - 1
    width = max((len(o[4]) for opts in options for o in opts), default=0)
    start = (0, False, (0,) * width)
    stages = [{start: 1}]
    for opts in options:
        nxt: dict = {}
        for (s, f, aux), mask in stages[-1].items():
            for opt in opts:
                x, lo, hi, fl, ax = opt
                s2 = s + x
                if s2 > need or lo > target:
                    continue
                aux2 = tuple(a + b for a, b in zip(aux, ax)) if ax else aux
                key = (s2, f or fl, aux2)
                got = spread(mask, lo, min(hi, target)) & full
                if got:
                    nxt[key] = nxt.get(key, 0) | got
        if not nxt:
            return None
        stages.append(nxt)
    final = None
    window = full >> low << low
    for key, mask in stages[-1].items():
        if key[0] == need and mask & window and accept(key[1], key[2]):
            final = key
            amount = (mask & window & -(mask & window)).bit_length() - 1
            break
    if final is None:
        return None
    # backtrace
    picks = []
    key = final
    for j in range(len(options) - 1, -1, -1):
        s, f, aux = key
        found = None
        for opt in options[j]:
            x, lo, hi, fl, ax = opt
            prev_aux = tuple(a - b for a, b in zip(aux, ax)) if ax else aux
            for pf in (False, True):
                if (pf or fl) != f:
                    continue
                mask = stages[j].get((s - x, pf, prev_aux))
                if not mask:
                    continue
                for d in range(max(lo, 0), min(hi, amount) + 1):
                    if mask >> (amount - d) & 1:
                        found = (opt, d, (s - x, pf, prev_aux))
                        break
                if found:
                    break
            if found:
                break
        if found is None:  # pragma: no cover - table and backtrace disagree
            raise RuntimeError("knapsack backtrace failed")
        opt, d, key = found
        picks.append((opt, d))
        amount -= d
    picks.reverse()
    return picks


def _fill(values: list, idx: list, caps: list, amount: int) -> None:
    # raise values[idx] up to caps until amount is used up
    for i, cap in zip(idx, caps):
        take = min(cap - values[i], amount)
        values[i] += take
        amount -= take
    if amount:
        raise RuntimeError("could not distribute the remaining support")


# --- divisor methods -----------------------------------------------------

def divisor_gain(p: Sequence[int], ben: int, amount: int, k: int, te: int, fr: Fractions,
                 victim: Optional[int] = None) -> Optional[tuple]:
    '''``ben`` receives at most ``amount`` votes taken from the others.

    With ``victim`` unset every other party must finish with fewer seats
    than ``ben``; otherwise only ``victim`` must.  Returns a final support
    vector or None.  Spending less than the whole budget can matter: the
    last votes taken may push a rival below the threshold and hand its
    seats to another rival.
    '''
    m = len(p)
    qmax = p[ben] + amount
    if qmax < te:
        return None
    big = sum(p) + 1
    others = [i for i in range(m) if i != ben]
    guesses = [(ben, z, q) for q in range(max(te, p[ben]), qmax + 1) for z in range(1, k + 1)]
    for s in others:
        for ys in range(max(te, p[s] - amount), p[s] + 1):
            guesses.extend((s, z, ys) for z in range(1, k + 1))
    for s, z, ys in guesses:
        vn, vd = ys * fr.den[z - 1], fr.num[z - 1]
        if s == ben:
            levels = [(z, ys, ys)]
        else:
            # ben's seat count fixes an interval for its final support
            levels = []
            for a in range(1, k + 1):
                lo, hi = divisor_level(fr, a, te, vn, vd, ben < s, big)
                lo, hi = max(lo, p[ben]), min(hi, qmax)
                if lo <= hi:
                    levels.append((a, lo, hi))
        spent = 0 if s == ben else p[s] - ys
        for a_ben, qlo, qhi in levels:
            final = _divisor_gain_fill(p, ben, amount, k, te, fr, victim, s, z, ys, vn, vd, big,
                                       a_ben, qlo - p[ben] - spent, qhi - p[ben] - spent)
            if final:
                return final
    return None


def _divisor_gain_fill(p, ben, amount, k, te, fr, victim, s, z, ys, vn, vd, big, a_ben, lo_t, hi_t):
    cap = a_ben - 1
    need = k - a_ben
    if s != ben:
        if (victim is None or s == victim) and z > cap:
            return None
        need -= z
    if need < 0 or hi_t < 0:
        return None
    options = []
    parties = []
    for i in range(len(p)):
        if i == s or i == ben:
            continue
        top = cap if (victim is None or i == victim) else k
        top = min(top, need)
        opts = []
        weak = i < s
        for x in range(top + 1):
            lo, hi = divisor_level(fr, x, te, vn, vd, weak, big)
            lo = max(lo, p[i] - amount)
            if lo > p[i]:
                break
            hi = min(hi, p[i])
            if lo <= hi:
                opts.append((x, p[i] - hi, p[i] - lo, False, ()))
        if not opts:
            return None
        options.append(opts)
        parties.append(i)
    picks = knapsack(options, need, hi_t, lambda f, a: True, lo_t)
    if picks is None:
        return None
    final = list(p)
    if s != ben:
        final[s] = ys
    for i, (_, d) in zip(parties, picks):
        final[i] = p[i] - d
    final[ben] = p[ben] + sum(p) - sum(final)
    return tuple(final)


def divisor_loss(p: Sequence[int], vic: int, amount: int, k: int, te: int, fr: Fractions) -> Optional[tuple]:
    '''``vic`` gives exactly ``amount`` votes to the others, who only gain.

    Succeeds when some other party ends with more seats than ``vic``.
    '''
    m = len(p)
    yv = p[vic] - amount
    big = sum(p) + 1
    others = [i for i in range(m) if i != vic]
    guesses = []
    if yv >= te:
        guesses.extend((vic, z, yv) for z in range(1, k + 1))
    for s in others:
        for ys in range(max(te, p[s]), p[s] + amount + 1):
            guesses.extend((s, z, ys) for z in range(1, k + 1))
    for s, z, ys in guesses:
        vn, vd = ys * fr.den[z - 1], fr.num[z - 1]
        if s == vic:
            a_vic = z
            need = k - z
            flag0 = False
        else:
            a_vic = entries_beating(fr, yv, te, vn, vd, vic < s)
            need = k - a_vic - z
            flag0 = z > a_vic
        if need < 0:
            continue
        options = []
        parties = []
        for i in others:
            if i == s:
                continue
            opts = []
            weak = i < s
            for x in range(need + 1):
                lo, hi = divisor_level(fr, x, te, vn, vd, weak, big)
                lo = max(lo, p[i])
                hi = min(hi, p[i] + amount)
                if lo > p[i] + amount:
                    break
                if lo <= hi:
                    opts.append((x, lo - p[i], hi - p[i], x > a_vic, ()))
            if not opts:
                break
            options.append(opts)
            parties.append(i)
        else:
            spent = 0 if s == vic else ys - p[s]
            picks = knapsack(options, need, amount - spent, lambda f, a: f or flag0)
            if picks is None:
                continue
            final = list(p)
            final[vic] = yv
            if s != vic:
                final[s] = ys
            for i, (_, d) in zip(parties, picks):
                final[i] = p[i] + d
            return tuple(final)
    return None


# --- largest remainder ---------------------------------------------------

def _lrm_pivots(survivor_ranges, nn, k):
    # (pivot party or None, pivot support); None means no remainder seats
    yield None, 0
    for s, lo, hi in survivor_ranges:
        for ys in range(lo, hi + 1):
            yield s, ys


def lrm_gain(p: Sequence[int], ben: int, amount: int, k: int, te: int,
             victim: Optional[int] = None) -> Optional[tuple]:
    '''Largest-remainder counterpart of ``divisor_gain``.'''
    m = len(p)
    n = sum(p)
    qlo, qmax = max(te, p[ben]), p[ben] + amount
    if qmax < te:
        return None
    others = [i for i in range(m) if i != ben]
    above = [i for i in others if p[i] >= te]
    below_cap = sum(p[i] for i in others if p[i] < te)
    for nn in range(max(qlo, 1), n + 1):
        spare = n - nn  # support held by parties below the threshold
        if spare > below_cap + len(above) * (te - 1):
            continue
        qhi = min(qmax, nn)
        ranges = [(ben, qlo, qhi)] + [(s, max(te, p[s] - amount), p[s]) for s in above]
        for s, ys in _lrm_pivots(ranges, nn, k):
            rho = 0 if s is None else k * ys % nn
            if s == ben:
                levels = [(k * ys // nn + 1, ys, ys)]
            else:
                c = nn if s is None else (rho if ben < s else rho + 1)
                levels = []
                for x in range(1, k + 1):
                    lo, hi = lrm_level(x, nn, k, c)
                    lo, hi = max(lo, qlo), min(hi, qhi)
                    if lo <= hi:
                        levels.append((x, lo, hi))
            for a_ben, ql, qh in levels:
                final = _lrm_gain_fill(p, ben, amount, k, te, victim, nn, s, ys, rho, a_ben, ql, qh,
                                       spare, others, below_cap)
                if final:
                    return final
    return None


def _lrm_gain_fill(p, ben, amount, k, te, victim, nn, s, ys, rho, a_ben, ql, qh, spare, others, below_cap):
    cap = a_ben - 1
    need = k - a_ben
    used = 0
    if s is not None and s != ben:
        a_s = k * ys // nn + 1
        if (victim is None or s == victim) and a_s > cap:
            return None
        need -= a_s
        used = ys
    hi_t, lo_t = nn - ql - used, nn - qh - used
    if need < 0 or hi_t < 0:
        return None
    options = []
    parties = []
    for i in others:
        if i == s or p[i] < te:
            continue
        top = cap if (victim is None or i == victim) else k
        top = min(top, need)
        c = nn if s is None else (rho if i < s else rho + 1)
        opts = [(0, 0, 0, False, (1,))]  # pushed below the threshold
        for x in range(top + 1):
            lo, hi = lrm_level(x, nn, k, c)
            lo = max(lo, te, p[i] - amount)
            hi = min(hi, p[i])
            if lo <= hi:
                opts.append((x, lo, hi, False, (0,)))
        options.append(opts)
        parties.append(i)

    def ok(flag, aux):
        return spare <= below_cap + (aux[0] if aux else 0) * (te - 1)

    picks = knapsack(options, need, hi_t, ok, lo_t)
    if picks is None:
        return None
    final = list(p)
    if s is not None and s != ben:
        final[s] = ys
    final[ben] = nn - used - sum(d for _, d in picks)
    low_idx, low_caps = [], []
    for i, (opt, d) in zip(parties, picks):
        if opt[4] == (1,):
            final[i] = 0
            low_idx.append(i)
            low_caps.append(te - 1)
        else:
            final[i] = d
    for i in others:
        if p[i] < te:
            final[i] = 0
            low_idx.append(i)
            low_caps.append(p[i])
    _fill(final, low_idx, low_caps, spare)
    return tuple(final)


def lrm_loss(p: Sequence[int], vic: int, amount: int, k: int, te: int) -> Optional[tuple]:
    '''Largest-remainder counterpart of ``divisor_loss``.'''
    m = len(p)
    n = sum(p)
    yv = p[vic] - amount
    vsurv = yv >= te
    others = [i for i in range(m) if i != vic]
    above = [i for i in others if p[i] >= te]
    ranges = [(vic, yv, yv)] if vsurv else []
    ranges += [(s, max(te, p[s]), p[s] + amount) for s in others]
    base = (yv if vsurv else 0) + sum(p[i] for i in above)
    top_nn = n - (0 if vsurv else yv)
    for nn in range(max(base, 1), top_nn + 1):
        spare = top_nn - nn  # support of the other parties left below the threshold
        for s, ys in _lrm_pivots(ranges, nn, k):
            if s is None:
                a_vic = k * yv // nn if vsurv else 0
            else:
                rho = k * ys % nn
                if s == vic:
                    a_vic = k * yv // nn + 1
                elif vsurv:
                    a_vic = lrm_seats(yv, nn, k, rho if vic < s else rho + 1)
                else:
                    a_vic = 0
            need = k - a_vic
            survivors = nn - (yv if vsurv else 0)
            flag0 = False
            if s is not None and s != vic:
                a_s = k * ys // nn + 1
                need -= a_s
                survivors -= ys
                flag0 = a_s > a_vic
            if need < 0 or survivors < 0:
                continue
            options = []
            parties = []
            for i in others:
                if i == s:
                    continue
                c = nn if s is None else (rho if i < s else rho + 1)
                opts = []
                if p[i] < te:
                    opts.append((0, 0, 0, False, (1, p[i])))
                for x in range(need + 1):
                    lo, hi = lrm_level(x, nn, k, c)
                    lo = max(lo, te, p[i])
                    hi = min(hi, p[i] + amount)
                    if lo <= hi:
                        opts.append((x, lo, hi, x > a_vic, (0, 0)))
                if not opts:
                    break
                options.append(opts)
                parties.append(i)
            else:
                def ok(flag, aux, spare=spare, flag0=flag0):
                    j, low = aux or (0, 0)
                    return (flag or flag0) and low <= spare <= j * (te - 1)

                picks = knapsack(options, need, survivors, ok)
                if picks is None:
                    continue
                final = list(p)
                final[vic] = yv
                if s is not None and s != vic:
                    final[s] = ys
                low_idx, low_caps = [], []
                left = spare
                for i, (opt, d) in zip(parties, picks):
                    if opt[4][0] == 1:
                        low_idx.append(i)
                        low_caps.append(te - 1)
                        left -= p[i]
                    else:
                        final[i] = d
                _fill(final, low_idx, low_caps, left)
                return tuple(final)
    return None
