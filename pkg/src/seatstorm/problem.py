"""Bribery instances, campaign plans and the objective predicates."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

from .alloc import (
    RankedProfile,
    ThresholdSpec,
    UndefinedSupportError,
    _second_chance,
    effective_threshold,
    resolve_threshold,
)
from .core import Method, UndefinedAllocationError, allocate

__all__ = [
    "CONSTRUCTIVE",
    "DESTRUCTIVE",
    "SEATS",
    "WINNER",
    "Move",
    "CampaignPlan",
    "Decision",
    "BriberyInstance",
    "District",
    "Election",
    "seat_outcome",
    "objective_met",
]

CONSTRUCTIVE = "constructive"
DESTRUCTIVE = "destructive"
SEATS = "seats"
WINNER = "winner"
TOP_CHOICE = "top-choice"
SECOND_CHANCE = "second-chance"


@dataclass(frozen=True)
class Move:
    source: int
    dest: int
    count: int
    district: int = 0


@dataclass(frozen=True)
class CampaignPlan:
    '''A witness: votes moved between parties, per district.

    In second-chance mode a move relabels ``count`` ballots whose top
    choice is ``source`` so that ``dest`` becomes their top choice (the
    rest of the ranking keeps its order).
    '''

    moves: tuple = ()

    @property
    def cost(self) -> int:
        return sum(mv.count for mv in self.moves)

    def apply(self, votes: Sequence[int], district: int = 0) -> tuple:
        out = list(votes)
        for mv in self.moves:
            if mv.district != district:
                continue
            out[mv.source] -= mv.count
            out[mv.dest] += mv.count
            if out[mv.source] < 0:
                raise ValueError(f"plan moves more votes than party {mv.source} has")
        return tuple(out)

    def apply_ranked(self, profile: RankedProfile) -> RankedProfile:
        ballots = [[list(r), m] for r, m in profile.ballots]
        for mv in self.moves:
            left = mv.count
            for b in ballots:
                if left == 0:
                    break
                if b[0][0] == mv.source and b[1] > 0:
                    take = min(left, b[1])
                    b[1] -= take
                    left -= take
                    r = [mv.dest] + [p for p in b[0] if p != mv.dest]
                    ballots.append([r, take])
            if left:
                raise ValueError(f"plan moves more ballots than party {mv.source} tops")
        return RankedProfile(tuple((tuple(r), m) for r, m in ballots if m > 0), profile.parties)

    @classmethod
    def from_vectors(cls, before: Sequence[int], after: Sequence[int], district: int = 0):
        '''Minimal plan turning one count vector into another of equal total.'''
        give = [[i, b - a] for i, (b, a) in enumerate(zip(before, after)) if b > a]
        take = [[i, a - b] for i, (b, a) in enumerate(zip(before, after)) if a > b]
        moves = []
        gi = ti = 0
        while gi < len(give) and ti < len(take):
            c = min(give[gi][1], take[ti][1])
            moves.append(Move(give[gi][0], take[ti][0], c, district))
            give[gi][1] -= c
            take[ti][1] -= c
            if give[gi][1] == 0:
                gi += 1
            if take[ti][1] == 0:
                ti += 1
        return cls(tuple(moves))

    def merged(self, other: "CampaignPlan") -> "CampaignPlan":
        return CampaignPlan(self.moves + other.moves)


@dataclass(frozen=True)
class Decision:
    feasible: bool
    plan: Optional[CampaignPlan] = None

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class BriberyInstance:
    '''A single-district bribery problem.

    ``votes`` are the top-choice counts in tie-break order and ``target``
    is the 0-based position of the distinguished party.  ``level`` is the
    seat target for the seat objective: at least ``level`` seats when
    constructive, at most ``level`` seats when destructive.  In
    second-chance mode ``ballots`` holds the ranked profile and ``votes``
    is derived from it.
    '''

    votes: tuple
    seats: int
    method: Method
    target: int
    threshold: Union[ThresholdSpec, int] = 0
    objective: str = SEATS
    direction: str = CONSTRUCTIVE
    level: Optional[int] = None
    budget: int = 0
    ballots: Optional[RankedProfile] = None
    tau: int = field(init=False)

    def __post_init__(self):
        if self.ballots is not None:
            object.__setattr__(self, "votes", self.ballots.top_choices().counts)
        object.__setattr__(self, "votes", tuple(int(v) for v in self.votes))
        if any(v < 0 for v in self.votes):
            raise ValueError("vote counts must be nonnegative")
        if not 0 <= self.target < len(self.votes):
            raise ValueError("distinguished party out of range")
        if self.seats < 1:
            raise ValueError("at least one seat is required")
        if self.objective not in (SEATS, WINNER):
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.direction not in (CONSTRUCTIVE, DESTRUCTIVE):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.objective == SEATS:
            if self.level is None:
                raise ValueError("seat objective needs a target level")
            lo = 1 if self.direction == CONSTRUCTIVE else 0
            if not lo <= self.level <= self.seats:
                raise ValueError(f"target level {self.level} outside [{lo}, {self.seats}]")
        if not 0 <= self.budget:
            raise ValueError("budget must be nonnegative")
        object.__setattr__(self, "tau", resolve_threshold(self.threshold, sum(self.votes)))

    @property
    def mode(self) -> str:
        return TOP_CHOICE if self.ballots is None else SECOND_CHANCE

    @property
    def n(self) -> int:
        return sum(self.votes)

    @property
    def constructive(self) -> bool:
        return self.direction == CONSTRUCTIVE

    def with_budget(self, budget: int) -> "BriberyInstance":
        return replace(self, budget=budget)

    def with_level(self, level: int) -> "BriberyInstance":
        return replace(self, level=level)

    def outcome(self, votes: Optional[Sequence[int]] = None) -> tuple:
        return seat_outcome(self.votes if votes is None else votes, self.seats, self.method, self.tau)

    def satisfied(self, seats: Sequence[int]) -> bool:
        return objective_met(seats, self.target, self.objective, self.direction, self.level)

    def check_plan(self, plan: CampaignPlan) -> bool:
        '''Replay a plan and test the objective and the budget.'''
        if plan.cost > self.budget:
            return False
        if self.ballots is not None:
            seats = ranked_outcome(plan.apply_ranked(self.ballots), self.seats, self.method, self.tau)
        else:
            seats = self.outcome(plan.apply(self.votes))
        return self.satisfied(seats)


@dataclass(frozen=True)
class District:
    """Top-choice counts (or ranked ballots) of one district with its seats and threshold."""

    votes: tuple
    seats: int
    threshold: Union[ThresholdSpec, int] = 0
    ballots: Optional[RankedProfile] = None
    name: str = ""
    tau: int = field(init=False)

    def __post_init__(self):
        if self.ballots is not None:
            object.__setattr__(self, "votes", self.ballots.top_choices().counts)
        object.__setattr__(self, "votes", tuple(int(v) for v in self.votes))
        if any(v < 0 for v in self.votes):
            raise ValueError("vote counts must be nonnegative")
        if self.seats < 1:
            raise ValueError("at least one seat is required")
        # relative thresholds resolve against the district's own ballots
        object.__setattr__(self, "tau", resolve_threshold(self.threshold, sum(self.votes)))

    @property
    def n(self) -> int:
        return sum(self.votes)

    def instance(self, method: Method, target: int, **kw) -> BriberyInstance:
        return BriberyInstance(self.votes, self.seats, method, target, self.threshold, ballots=self.ballots, **kw)


@dataclass(frozen=True)
class Election:
    '''Parties in tie-break order and one or more districts.

    Every district lists votes for the full party universe (zero where a
    party did not run).
    '''

    parties: tuple
    districts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parties", tuple(self.parties))
        object.__setattr__(self, "districts", tuple(self.districts))
        if not self.districts:
            raise ValueError("an election needs at least one district")
        if len(set(self.parties)) != len(self.parties):
            raise ValueError("party names must be unique")
        for d in self.districts:
            if len(d.votes) != len(self.parties):
                raise ValueError(f"district {d.name or '?'} lists {len(d.votes)} parties, expected {len(self.parties)}")

    @property
    def seats(self) -> int:
        return sum(d.seats for d in self.districts)

    @property
    def n(self) -> int:
        return sum(d.n for d in self.districts)

    def outcome(self, method: Method) -> tuple:
        total = [0] * len(self.parties)
        for d in self.districts:
            if d.ballots is not None:
                seats = ranked_outcome(d.ballots, d.seats, method, d.tau)
            else:
                seats = seat_outcome(d.votes, d.seats, method, d.tau)
            for i, s in enumerate(seats):
                total[i] += s
        return tuple(total)

    def party_index(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.parties.index(name)
        except ValueError:
            raise ValueError(f"unknown party {name!r}") from None


def seat_outcome(votes: Sequence[int], seats: int, method: Method, tau: int) -> tuple:
    '''Top-choice seat outcome; an empty parliament when nobody qualifies.'''
    t = effective_threshold(tau)
    support = [v if v >= t else 0 for v in votes]
    try:
        return allocate(support, seats, method)
    except UndefinedAllocationError:
        return (0,) * len(votes)


def ranked_outcome(profile: RankedProfile, seats: int, method: Method, tau: int) -> tuple:
    try:
        support = _second_chance(profile.ballots, profile.parties, tau)
    except UndefinedSupportError:
        return (0,) * profile.parties
    return allocate(support, seats, method)


def objective_met(seats: Sequence[int], target: int, objective: str, direction: str, level=None) -> bool:
    mine = seats[target]
    if objective == SEATS:
        return mine >= level if direction == CONSTRUCTIVE else mine <= level
    best_rival = max((s for i, s in enumerate(seats) if i != target), default=-1)
    if direction == CONSTRUCTIVE:
        return mine > max(best_rival, 0)
    return best_rival > mine
