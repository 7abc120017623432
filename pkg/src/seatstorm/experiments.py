"""The three experiments: strategy effectiveness, threshold sweeps and district merging.

Every experiment returns a plain result object that can be written to
CSV/.dat files with the ``write_*`` helpers; outputs depend only on the
inputs and the seed.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from .alloc import ThresholdSpec
from .core import Method
from .heuristics import KINDS, OPTIMAL, effectiveness_ratios
from .problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, District, Election
from .solvers_multi import multi_min_budget
from .solvers_single import max_seat_delta

__all__ = [
    "SweepResult",
    "default_grid",
    "threshold_sweep",
    "write_sweep",
    "MergePlan",
    "merge_districts",
    "MergeRow",
    "MergeResult",
    "merge_goal",
    "district_merge_experiment",
    "write_merge",
    "EffectivenessReport",
    "effectiveness_experiment",
    "write_effectiveness",
    "fmt",
]

SELECTIONS = ("average", "strongest", "weakest")


def fmt(x) -> str:
    """Five decimal places, the precision of the report tables."""
    return f"{float(x):.5f}"


def _pct(t: Fraction) -> str:
    # shortest exact-looking decimal for a grid threshold in percent
    s = f"{float(t):.6f}".rstrip("0").rstrip(".")
    return s or "0"


# --- threshold sweep -----------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    points: tuple  # ((threshold percent as Fraction, seat delta), ...)
    direction: str
    budget_fraction: Fraction
    budget: int


def default_grid(lo="0", hi="12", step="0.05") -> list:
    '''Thresholds in percent from ``lo`` to ``hi`` inclusive, as exact fractions.'''
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    out = []
    t = lo
    while t <= hi:
        out.append(t)
        t += step
    return out


def threshold_sweep(election: Election, target, budget_fraction, grid: Optional[Sequence] = None,
                    method: Optional[Method] = None, direction: str = CONSTRUCTIVE) -> SweepResult:
    '''Most seats P* gains (or loses) with a budget of ``budget_fraction`` of all ballots.

    Each grid value is a threshold in percent of the ballots cast; it is
    turned into a vote count with ``resolve_threshold`` (rounding up) at
    every point.
    '''
    if len(election.districts) != 1:
        raise ValueError("the threshold sweep needs a single-district election")
    method = method or Method.dhondt()
    target = election.party_index(target)
    d = election.districts[0]
    rho = Fraction(str(budget_fraction))
    if not 0 <= rho <= 1:
        raise ValueError("budget fraction must lie in [0, 1]")
    k = (rho.numerator * d.n) // rho.denominator
    grid = sorted(Fraction(str(t)) for t in (default_grid() if grid is None else grid))
    points = []
    for t in grid:
        dist = replace(d, threshold=ThresholdSpec.relative(t / 100))
        level = 1 if direction == CONSTRUCTIVE else 0
        inst = dist.instance(method, target, objective=SEATS, direction=direction, level=level, budget=k)
        points.append((t, max_seat_delta(inst)))
    return SweepResult(tuple(points), direction, rho, k)


def write_sweep(result: SweepResult, path) -> Path:
    """One "threshold value" pair per line, whitespace separated."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t, v in result.points:
            fh.write(f"{_pct(t)} {v}\n")
    return path


# --- district merging ----------------------------------------------------

@dataclass(frozen=True)
class MergePlan:
    '''Random merge orders, one per trial.

    ``steps[t]`` lists, for trial t, the pairs of positions (in the list
    of live districts at that moment) merged one after the other.  Pairs
    are drawn uniformly without replacement by ``numpy.random.default_rng``
    seeded with ``(seed, t)``.
    '''

    seed: int
    steps: tuple
    trials: int = 3

    @classmethod
    def draw(cls, districts: int, merges: int, seed: int, trials: int = 3) -> "MergePlan":
        if not 0 <= merges < districts:
            raise ValueError(f"cannot merge {merges} times with {districts} districts")
        steps = []
        for t in range(trials):
            rng = np.random.default_rng([seed, t])
            live = districts
            seq = []
            for _ in range(merges):
                a, b = sorted(int(x) for x in rng.choice(live, size=2, replace=False))
                seq.append((a, b))
                live -= 1
            steps.append(tuple(seq))
        return cls(seed, tuple(steps), trials)


def merge_districts(election: Election, pairs: Sequence) -> Election:
    '''Apply merges in order; the merged district takes the first position.

    Votes and seats add up; the threshold spec is kept, so relative
    thresholds resolve against the merged electorate.
    '''
    ds = list(election.districts)
    for a, b in pairs:
        if a == b or not (0 <= a < len(ds) and 0 <= b < len(ds)):
            raise ValueError(f"invalid merge ({a}, {b}) with {len(ds)} districts")
        a, b = min(a, b), max(a, b)
        x, y = ds[a], ds[b]
        if x.ballots is not None or y.ballots is not None:
            raise ValueError("merging is only supported for top-choice districts")
        if x.threshold != y.threshold:
            raise ValueError("merged districts must share a threshold spec")
        votes = tuple(u + v for u, v in zip(x.votes, y.votes))
        ds[a] = District(votes, x.seats + y.seats, x.threshold, name=f"{x.name}+{y.name}")
        del ds[b]
    return Election(election.parties, tuple(ds))


def merge_goal(election: Election, target: int, method: Method, direction: str) -> int:
    '''Seat level of the merge experiment.

    Constructive: a majority, floor(seats/2) + 1.  Destructive: P* keeps
    at most floor(s/2) of its original s seats.
    '''
    if direction == CONSTRUCTIVE:
        return election.seats // 2 + 1
    return election.outcome(method)[target] // 2


@dataclass(frozen=True)
class MergeRow:
    districts: int
    budgets: tuple  # per trial
    changes: tuple  # seats gained / lost per trial
    per_seat: Fraction  # mean budget / mean seat change
    ratio: Fraction  # per_seat over the original districting's per_seat


@dataclass(frozen=True)
class MergeResult:
    direction: str
    level: int
    seed: int
    rows: tuple = field(default_factory=tuple)


def district_merge_experiment(election: Election, target, plan: MergePlan, counts: Sequence[int],
                              method: Optional[Method] = None, direction: str = CONSTRUCTIVE,
                              level: Optional[int] = None) -> MergeResult:
    '''Minimum budget per changed seat as districts get merged.

    For each district count in ``counts`` every trial applies the first
    merges of its order until that many districts remain and solves the
    multi-district seat problem.  The per-seat budget is the mean budget
    over trials divided by the mean number of seats changed; the ratio
    divides it by the per-seat budget of the original districting.
    '''
    method = method or Method.dhondt()
    target = election.party_index(target)
    q = len(election.districts)
    if level is None:
        level = merge_goal(election, target, method, direction)

    def solve_at(el):
        now = el.outcome(method)[target]
        change = level - now if direction == CONSTRUCTIVE else now - level
        if change <= 0:
            return 0, 0
        cost = multi_min_budget(el, target, level, method, direction)
        if cost is None:
            raise ValueError(f"seat level {level} unreachable with {len(el.districts)} districts")
        return cost, change

    base_cost, base_change = solve_at(election)
    if base_change == 0:
        raise ValueError("the goal already holds in the original election")
    base = Fraction(base_cost, base_change)
    rows = []
    for c in sorted(set(counts), reverse=True):
        merges = q - c
        if merges < 0 or c < 1:
            raise ValueError(f"district count {c} outside [1, {q}]")
        if merges > 0 and any(len(s) < merges for s in plan.steps):
            raise ValueError(f"merge plan too short for {c} districts")
        if merges == 0:
            got = [(base_cost, base_change)] * plan.trials
        else:
            got = [solve_at(merge_districts(election, s[:merges])) for s in plan.steps]
        budgets = tuple(b for b, _ in got)
        changes = tuple(s for _, s in got)
        if sum(changes) == 0:
            per_seat = Fraction(0)
        else:
            per_seat = Fraction(sum(budgets), sum(changes))
        rows.append(MergeRow(c, budgets, changes, per_seat, per_seat / base))
    return MergeResult(direction, level, plan.seed, tuple(rows))


def write_merge(result: MergeResult, path) -> Path:
    '''CSV with the raw per-trial data next to the aggregated columns.'''
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["districts", "trial", "budget", "seat_change", "per_seat", "ratio"])
        for row in result.rows:
            for t, (b, s) in enumerate(zip(row.budgets, row.changes)):
                w.writerow([row.districts, t, b, s, fmt(row.per_seat), fmt(row.ratio)])
    return path


# --- strategy effectiveness ---------------------------------------------

@dataclass(frozen=True)
class EffectivenessReport:
    direction: str
    # ((country, kind, {selection: Fraction or None}), ...)
    cells: tuple

    def value(self, country: str, kind: str, selection: str):
        for c, k, row in self.cells:
            if c == country and k == kind:
                return row[selection]
        raise KeyError((country, kind))


def effectiveness_experiment(datasets: Mapping, direction: str = CONSTRUCTIVE,
                             kinds: Sequence[str] = KINDS) -> EffectivenessReport:
    '''Strategy-over-optimal budget ratios per country and party selection.

    ``datasets`` maps a country label to ``(election, method)``.  The
    destructive variant only considers parties holding a seat.
    '''
    if not datasets:
        raise ValueError("no datasets given")
    kinds = list(kinds)
    if OPTIMAL not in kinds:
        kinds.insert(0, OPTIMAL)
    cells = []
    for country, (election, method) in datasets.items():
        per_sel = {s: effectiveness_ratios(election, s, direction, method, kinds) for s in SELECTIONS}
        for k in kinds:
            cells.append((country, k, {s: per_sel[s][k] for s in SELECTIONS}))
    return EffectivenessReport(direction, tuple(cells))


def write_effectiveness(report: EffectivenessReport, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["country", "strategy", *SELECTIONS])
        for country, kind, row in report.cells:
            w.writerow([country, kind, *(fmt(row[s]) for s in SELECTIONS)])
    return path
