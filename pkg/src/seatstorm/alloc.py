"""Support allocation: from ballots to per-party support.

Two modes exist.  In top-choice mode a party keeps its first-preference
count if that count reaches the threshold and gets nothing otherwise.  In
second-chance mode the set of qualifying parties is fixed from the first
preferences, and every ballot then counts for its most preferred
qualifying party (a single transfer, no cascading eliminations).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .core import SupportAllocation

__all__ = [
    "UndefinedSupportError",
    "TopChoiceProfile",
    "RankedProfile",
    "ThresholdSpec",
    "resolve_threshold",
    "top_choice_support",
    "second_chance_support",
    "effective_threshold",
]


class UndefinedSupportError(ValueError):
    """No party reaches the threshold in second-chance mode."""


def effective_threshold(tau: int) -> int:
    # parties with zero votes never qualify, so a zero threshold acts as 1
    return max(tau, 1)


@dataclass(frozen=True)
class TopChoiceProfile:
    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise ValueError("vote counts must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class RankedProfile:
    '''Ranked ballots as (ranking, multiplicity) pairs.

    A ranking is a tuple of 0-based party positions, most preferred first,
    covering every party exactly once.  Equal rankings are merged and the
    pairs are kept sorted so equal profiles compare equal.
    '''

    ballots: tuple
    parties: int

    def __post_init__(self):
        merged: Counter = Counter()
        for ranking, mult in self.ballots:
            ranking = tuple(int(x) for x in ranking)
            if sorted(ranking) != list(range(self.parties)):
                raise ValueError(f"ranking {ranking} is not a permutation of {self.parties} parties")
            if mult < 1:
                raise ValueError("ballot multiplicities must be positive")
            merged[ranking] += int(mult)
        object.__setattr__(self, "ballots", tuple(sorted(merged.items())))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.ballots)

    def top_choices(self) -> TopChoiceProfile:
        counts = [0] * self.parties
        for ranking, mult in self.ballots:
            counts[ranking[0]] += mult
        return TopChoiceProfile(counts)


@dataclass(frozen=True)
class ThresholdSpec:
    '''Absolute vote threshold or a fraction of the ballots cast.'''

    kind: str
    value: Union[int, Fraction]

    def __post_init__(self):
        if self.kind == "absolute":
            if int(self.value) != self.value or self.value < 0:
                raise ValueError("absolute threshold must be a nonnegative integer")
            object.__setattr__(self, "value", int(self.value))
        elif self.kind == "relative":
            v = _to_fraction(self.value)
            if not 0 <= v <= 1:
                raise ValueError(f"relative threshold {v} outside [0, 1]")
            object.__setattr__(self, "value", v)
        else:
            raise ValueError(f"unknown threshold kind {self.kind!r}")

    @classmethod
    def absolute(cls, votes: int):
        return cls("absolute", votes)

    @classmethod
    def relative(cls, fraction):
        return cls("relative", fraction)

    @classmethod
    def parse(cls, text):
        """Parse ``"100"`` (absolute), ``"5%"``, ``"0.05"`` or ``"1/150"`` (relative)."""
        if isinstance(text, ThresholdSpec):
            return text
        if isinstance(text, int) and not isinstance(text, bool):
            return cls.absolute(text)
        s = str(text).strip()
        if s.endswith("%"):
            return cls.relative(Fraction(s[:-1].strip()) / 100)
        if "/" in s or "." in s:
            return cls.relative(Fraction(s))
        return cls.absolute(int(s))

    def resolve(self, n: int) -> int:
        return resolve_threshold(self, n)

    def __str__(self):
        if self.kind == "absolute":
            return str(self.value)
        return f"{float(self.value * 100):g}%"


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        # go through the decimal text so 0.0325 means 13/400, not its binary neighbour
        return Fraction(repr(x))
    return Fraction(x)


def resolve_threshold(spec: Union[ThresholdSpec, int], n: int) -> int:
    """Absolute threshold for an electorate of ``n`` ballots (relative ones round up)."""
    if not isinstance(spec, ThresholdSpec):
        return ThresholdSpec.absolute(spec).value
    if spec.kind == "absolute":
        return spec.value
    if n < 0:
        raise ValueError("ballot count must be nonnegative")
    rho = spec.value
    return -((-rho.numerator * n) // rho.denominator)


def top_choice_support(profile: Union[TopChoiceProfile, Sequence[int]], tau: int) -> SupportAllocation:
    counts = profile.counts if isinstance(profile, TopChoiceProfile) else profile
    t = effective_threshold(tau)
    return SupportAllocation(tuple(c if c >= t else 0 for c in counts))


def qualifying_parties(counts: Sequence[int], tau: int) -> list:
    t = effective_threshold(tau)
    return [c >= t for c in counts]


def second_chance_support(profile: RankedProfile, tau: int) -> SupportAllocation:
    return SupportAllocation(_second_chance(profile.ballots, profile.parties, tau))


def _second_chance(ballots: Iterable, m: int, tau: int) -> tuple:
    ballots = list(ballots)
    counts = [0] * m
    for ranking, mult in ballots:
        counts[ranking[0]] += mult
    ok = qualifying_parties(counts, tau)
    if not any(ok):
        raise UndefinedSupportError("no party reaches the threshold")
    support = [0] * m
    for ranking, mult in ballots:
        for p in ranking:
            if ok[p]:
                support[p] += mult
                break
    return tuple(support)
