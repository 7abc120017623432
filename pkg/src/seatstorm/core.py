"""Domain types and seat apportionment.

Three families of methods are supported: first-past-the-post, divisor
sequence methods (D'Hondt, Sainte-Lague or any custom strictly increasing
sequence) and the largest-remainder method.  All comparisons are exact;
supports are integers and divisors are rationals, so every fraction
comparison is done by cross multiplication.

Parties are identified by their position in the support vector.  Position
0 is the first party in tie-break order, and every tie (equal fractions,
equal remainders, equal supports) is resolved in favour of the smaller
position.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

__all__ = [
    "UndefinedAllocationError",
    "Party",
    "DivisorSequence",
    "DHONDT",
    "SAINTE_LAGUE",
    "Method",
    "SupportAllocation",
    "SeatAllocation",
    "ApportionmentProblem",
    "divisor_value",
    "allocate",
    "apportion",
    "aggregate_districts",
]


class UndefinedAllocationError(ValueError):
    """Raised when no party has positive support."""


@dataclass(frozen=True)
class Party:
    index: int  # 1-based tie-break position
    name: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("party index must be >= 1")


class DivisorSequence:
    '''A strictly increasing sequence of positive rationals d_1, d_2, ...

    Use the module constants ``DHONDT`` and ``SAINTE_LAGUE`` or build a
    custom sequence with ``DivisorSequence.custom(func)`` where ``func``
    maps a 1-based position to a number convertible to ``Fraction``.
    Monotonicity of custom sequences is only validated on the positions
    actually requested.
    '''

    def __init__(self, kind: str, generator: Callable[[int], object]):
        self.kind = kind
        self._generator = generator
        self._cache: list[Fraction] = []

    @classmethod
    def custom(cls, generator: Callable[[int], object], name: str = "custom"):
        return cls(name, generator)

    @classmethod
    def from_values(cls, values: Sequence, name: str = "custom"):
        """Custom sequence given by an explicit finite prefix."""
        vals = [Fraction(v) for v in values]

        def gen(i):
            if i > len(vals):
                raise ValueError(f"divisor sequence {name!r} only defines {len(vals)} positions")
            return vals[i - 1]

        return cls(name, gen)

    def _extend(self, upto: int) -> None:
        cache = self._cache
        while len(cache) < upto:
            i = len(cache) + 1
            d = Fraction(self._generator(i))
            if i == 1 and d < 1:
                raise ValueError(f"divisor d_1 must be >= 1, got {d}")
            if cache and d <= cache[-1]:
                raise ValueError(f"divisor sequence not strictly increasing at position {i}")
            cache.append(d)

    def __call__(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError("divisor positions start at 1")
        self._extend(i)
        return self._cache[i - 1]

    def prefix(self, k: int) -> list[Fraction]:
        """d_1 .. d_k as a list."""
        self._extend(k)
        return self._cache[:k]

    def __repr__(self):
        return f"DivisorSequence({self.kind!r})"


DHONDT = DivisorSequence("dhondt", lambda i: i)
SAINTE_LAGUE = DivisorSequence("sainte-lague", lambda i: 2 * i - 1)


def divisor_value(seq: DivisorSequence, i: int) -> Fraction:
    """Return d_i exactly."""
    return seq(i)


@dataclass(frozen=True)
class Method:
    '''An apportionment method.

    ``kind`` is one of ``"fptp"``, ``"divisor"`` or ``"lrm"``; divisor
    methods carry their sequence.
    '''

    kind: str
    divisors: Optional[DivisorSequence] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("fptp", "divisor", "lrm"):
            raise ValueError(f"unknown method kind {self.kind!r}")
        if (self.kind == "divisor") != (self.divisors is not None):
            raise ValueError("divisor methods need a sequence, other methods must not have one")
        if not self.label:
            object.__setattr__(self, "label", self.divisors.kind if self.divisors else self.kind)

    @classmethod
    def fptp(cls):
        return cls("fptp")

    @classmethod
    def lrm(cls):
        return cls("lrm")

    @classmethod
    def divisor(cls, seq: DivisorSequence):
        return cls("divisor", seq, seq.kind)

    @classmethod
    def dhondt(cls):
        return cls.divisor(DHONDT)

    @classmethod
    def sainte_lague(cls):
        return cls.divisor(SAINTE_LAGUE)

    @classmethod
    def from_name(cls, name: str, divisors: Optional[Sequence] = None):
        """Parse a method name as used on the command line and in configs."""
        key = name.lower().replace("_", "-").replace("'", "")
        if key in ("fptp", "first-past-the-post", "plurality"):
            return cls.fptp()
        if key in ("lrm", "hamilton", "largest-remainder"):
            return cls.lrm()
        if key in ("dhondt", "d-hondt", "jefferson"):
            return cls.dhondt()
        if key in ("sainte-lague", "saintelague", "webster"):
            return cls.sainte_lague()
        if key == "custom":
            if not divisors:
                raise ValueError("custom method needs an explicit divisor list")
            return cls.divisor(DivisorSequence.from_values(divisors))
        raise ValueError(f"unknown apportionment method {name!r}")

    @property
    def is_divisor(self) -> bool:
        return self.kind == "divisor"

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class SupportAllocation:
    support: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(s) for s in self.support))
        if any(s < 0 for s in self.support):
            raise ValueError("supports must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.support)

    def __len__(self):
        return len(self.support)

    def __getitem__(self, i):
        return self.support[i]


@dataclass(frozen=True)
class SeatAllocation:
    seats: tuple

    def __post_init__(self):
        object.__setattr__(self, "seats", tuple(int(s) for s in self.seats))

    @property
    def total(self) -> int:
        return sum(self.seats)

    def __len__(self):
        return len(self.seats)

    def __getitem__(self, i):
        return self.seats[i]

    def __iter__(self):
        return iter(self.seats)


@dataclass(frozen=True)
class ApportionmentProblem:
    support: SupportAllocation
    threshold: int
    seats: int

    def __post_init__(self):
        if self.seats < 1:
            raise ValueError("at least one seat is required")
        if self.threshold < 0:
            raise ValueError("threshold must be nonnegative")


def _divisor_seats(support: Sequence[int], k: int, seq: DivisorSequence) -> list:
    # highest averages, one seat at a time; each party's fraction list is
    # strictly decreasing, so this picks the k largest entries in the global
    # (value desc, party asc, position asc) order
    ds = seq.prefix(k)
    nums = [d.numerator for d in ds]
    dens = [d.denominator for d in ds]
    seats = [0] * len(support)
    live = [i for i, y in enumerate(support) if y > 0]
    for _ in range(k):
        best = -1
        bn = bd = 0  # best value as bn / bd
        for i in live:
            z = seats[i]
            vn = support[i] * dens[z]
            vd = nums[z]
            if best < 0 or vn * bd > bn * vd:
                best, bn, bd = i, vn, vd
        seats[best] += 1
    return seats


def _lrm_seats(support: Sequence[int], k: int) -> list:
    n = sum(support)
    seats = [0] * len(support)
    rems = []
    for i, y in enumerate(support):
        if y > 0:
            q, r = divmod(k * y, n)
            seats[i] = q
            rems.append((-r, i))
    left = k - sum(seats)
    rems.sort()
    for _, i in rems[:left]:
        seats[i] += 1
    return seats


def _fptp_seats(support: Sequence[int], k: int) -> list:
    best = max(range(len(support)), key=lambda i: (support[i], -i))
    seats = [0] * len(support)
    seats[best] = k
    return seats


def allocate(support: Sequence[int], seats: int, method: Method) -> tuple:
    '''Seat counts for already-thresholded supports, as a plain tuple.

    This is the fast path used by the solvers; ``apportion`` wraps it with
    the domain types.  Raises ``UndefinedAllocationError`` when every
    support is zero.
    '''
    if seats < 1:
        raise ValueError("at least one seat is required")
    if not any(support):
        raise UndefinedAllocationError("every party has zero support")
    if method.kind == "divisor":
        out = _divisor_seats(support, seats, method.divisors)
    elif method.kind == "lrm":
        out = _lrm_seats(support, seats)
    else:
        out = _fptp_seats(support, seats)
    return tuple(out)


def apportion(
    problem: Union[ApportionmentProblem, SupportAllocation, Sequence[int]],
    method: Method,
    seats: Optional[int] = None,
) -> SeatAllocation:
    '''Apportion seats.

    Args:
        problem: an ``ApportionmentProblem``, or a support vector together
            with ``seats``.  Supports below the problem threshold are
            treated as zero.
        method: the apportionment method.
        seats: number of seats when ``problem`` is a bare support vector.
    '''
    if isinstance(problem, ApportionmentProblem):
        tau = problem.threshold
        support = [y if y >= tau else 0 for y in problem.support.support]
        k = problem.seats
    else:
        if seats is None:
            raise ValueError("seat count required")
        support = list(problem.support if isinstance(problem, SupportAllocation) else problem)
        k = seats
    return SeatAllocation(allocate(support, k, method))


def aggregate_districts(allocations: Iterable) -> SeatAllocation:
    """Component-wise sum of per-district allocations (absent parties count 0)."""
    total: list = []
    for a in allocations:
        seats = a.seats if isinstance(a, SeatAllocation) else tuple(a)
        if len(seats) > len(total):
            total.extend([0] * (len(seats) - len(total)))
        for i, s in enumerate(seats):
            total[i] += s
    return SeatAllocation(tuple(total))
