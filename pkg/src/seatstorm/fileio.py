"""Election files and run configuration.

Top-choice CSV: ``district_id,party,votes`` with a header row.  Ranked
CSV: ``district_id,multiplicity,ranking`` where the ranking lists every
party, separated by ``>``.  Seats per district come from the config (one
number for all districts or a mapping) or from a ``district_id,seats``
CSV.
"""
from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import yaml

from .alloc import RankedProfile, ThresholdSpec
from .core import Method
from .problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, TOP_CHOICE, SECOND_CHANCE, WINNER, District, Election

__all__ = [
    "ElectionFileError",
    "ConfigError",
    "RunConfig",
    "load_config",
    "read_seats",
    "load_election",
    "write_election",
]


class ElectionFileError(ValueError):
    """Malformed election data; the message names the file and line."""


class ConfigError(ValueError):
    """Invalid run configuration."""


_EXPERIMENT_KEYS = {"grid_lo", "grid_hi", "grid_step", "counts", "trials", "selection"}


@dataclass
class RunConfig:
    '''Everything a CLI run needs besides the data files.

    ``seats`` is one number for every district or a mapping from district
    id to seats.  ``parties`` fixes the tie-break order (default: order of
    first appearance in the data).  ``target`` is a party name or 1-based
    position.
    '''

    method: str = "dhondt"
    divisors: Optional[list] = None
    threshold: Union[str, int] = 0
    seats: Union[int, dict, None] = None
    parties: Optional[list] = None
    mode: str = TOP_CHOICE
    objective: str = SEATS
    direction: str = CONSTRUCTIVE
    target: Union[str, int, None] = None
    level: Optional[int] = None
    budget: Optional[int] = None
    budget_fraction: Optional[str] = None
    seed: int = 0
    votes: Optional[str] = None
    ranked: Optional[str] = None
    seats_file: Optional[str] = None
    dataset: Optional[str] = None
    experiment: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (TOP_CHOICE, SECOND_CHANCE):
            raise ConfigError(f"mode must be {TOP_CHOICE!r} or {SECOND_CHANCE!r}, got {self.mode!r}")
        if self.objective not in (SEATS, WINNER):
            raise ConfigError(f"objective must be {SEATS!r} or {WINNER!r}, got {self.objective!r}")
        if self.direction not in (CONSTRUCTIVE, DESTRUCTIVE):
            raise ConfigError(f"direction must be {CONSTRUCTIVE!r} or {DESTRUCTIVE!r}, got {self.direction!r}")
        extra = set(self.experiment or {}) - _EXPERIMENT_KEYS
        if extra:
            raise ConfigError(f"unknown experiment keys: {', '.join(sorted(extra))}")
        try:
            self.threshold_spec
            self.build_method()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for name in ("level", "budget", "seed"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
                raise ConfigError(f"{name} must be a nonnegative integer")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(map(str, unknown)))}")
        return cls(**data)

    def merged(self, overrides: dict) -> "RunConfig":
        """Copy with the non-None entries of ``overrides`` replacing fields."""
        data = dataclasses.asdict(self)
        for k, v in overrides.items():
            if v is None:
                continue
            if k == "experiment":
                data["experiment"] = {**data["experiment"], **v}
            else:
                data[k] = v
        return RunConfig.from_dict(data)

    @property
    def threshold_spec(self) -> ThresholdSpec:
        return ThresholdSpec.parse(self.threshold)

    def build_method(self) -> Method:
        return Method.from_name(self.method, self.divisors)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return RunConfig.from_dict(data or {})


def _rows(path, header):
    # yields (line number, row dict); checks the header
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            head = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ElectionFileError(f"{path}: empty file") from None
        if head != header:
            raise ElectionFileError(f"{path}:1: expected header {','.join(header)}, got {','.join(head)}")
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ElectionFileError(f"{path}:{reader.line_num}: expected {len(header)} fields, got {len(row)}")
            yield reader.line_num, dict(zip(header, (c.strip() for c in row)))


def _count(path, line, text, what):
    try:
        v = int(text)
    except ValueError:
        raise ElectionFileError(f"{path}:{line}: {what} {text!r} is not an integer") from None
    if v < 0:
        raise ElectionFileError(f"{path}:{line}: negative {what} {v}")
    return v


def read_seats(path) -> dict:
    out = {}
    for line, row in _rows(path, ["district_id", "seats"]):
        out[row["district_id"]] = _count(path, line, row["seats"], "seat count")
    return out


def _seat_lookup(config: RunConfig, seats_file):
    seats = config.seats
    if seats_file is not None:
        seats = read_seats(seats_file)
    if seats is None:
        raise ConfigError("seats per district missing (config 'seats' or a seats file)")

    def get(district):
        if isinstance(seats, dict):
            key = district if district in seats else str(district)
            if key not in seats:
                raise ConfigError(f"no seat count for district {district!r}")
            return int(seats[key])
        return int(seats)

    return get


def _order(found: list, config: RunConfig, where) -> list:
    if config.parties is None:
        return found
    order = [str(p) for p in config.parties]
    if len(set(order)) != len(order):
        raise ConfigError("tie-break party list has duplicates")
    missing = [p for p in found if p not in order]
    if missing:
        raise ElectionFileError(f"{where}: parties {missing} are not in the tie-break list")
    return order


def load_election(votes=None, config: Optional[RunConfig] = None, ranked=None, seats_file=None) -> Election:
    '''Read an election from a top-choice CSV or a ranked-ballot CSV.

    Districts keep the order of first appearance.  Parties follow
    ``config.parties`` when given, otherwise the order of first
    appearance; a party missing from a district gets zero votes.
    '''
    config = config or RunConfig()
    if (votes is None) == (ranked is None):
        raise ConfigError("give exactly one of a top-choice file or a ranked-ballot file")
    seat_of = _seat_lookup(config, seats_file)
    tau = config.threshold_spec
    if votes is not None:
        table: dict = {}
        found: list = []
        for line, row in _rows(votes, ["district_id", "party", "votes"]):
            d, p = row["district_id"], row["party"]
            if not d or not p:
                raise ElectionFileError(f"{votes}:{line}: empty district or party name")
            v = _count(votes, line, row["votes"], "vote count")
            per = table.setdefault(d, {})
            if p in per:
                raise ElectionFileError(f"{votes}:{line}: party {p!r} listed twice in district {d!r}")
            per[p] = v
            if p not in found:
                found.append(p)
        if not table:
            raise ElectionFileError(f"{votes}: no districts")
        parties = _order(found, config, votes)
        districts = tuple(
            District(tuple(per.get(p, 0) for p in parties), seat_of(d), tau, name=d)
            for d, per in table.items()
        )
        return Election(tuple(parties), districts)

    ballots: dict = {}
    found = []
    for line, row in _rows(ranked, ["district_id", "multiplicity", "ranking"]):
        mult = _count(ranked, line, row["multiplicity"], "multiplicity")
        names = [x.strip() for x in row["ranking"].split(">")]
        if len(set(names)) != len(names) or not all(names):
            raise ElectionFileError(f"{ranked}:{line}: ranking must list distinct parties")
        for p in names:
            if p not in found:
                found.append(p)
        ballots.setdefault(row["district_id"], []).append((line, names, mult))
    if not ballots:
        raise ElectionFileError(f"{ranked}: no districts")
    parties = _order(found, config, ranked)
    index = {p: i for i, p in enumerate(parties)}
    districts = []
    for d, rows in ballots.items():
        prof = []
        for line, names, mult in rows:
            if len(names) != len(parties):
                raise ElectionFileError(f"{ranked}:{line}: ranking is not a full permutation of {len(parties)} parties")
            if mult:
                prof.append((tuple(index[p] for p in names), mult))
        districts.append(District((), seat_of(d), tau, ballots=RankedProfile(tuple(prof), len(parties)), name=d))
    return Election(tuple(parties), tuple(districts))


def write_election(election: Election, path) -> Path:
    '''Top-choice CSV listing every party in every district (zeros included).'''
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["district_id", "party", "votes"])
        for j, d in enumerate(election.districts):
            name = d.name or str(j)
            for p, v in zip(election.parties, d.votes):
                w.writerow([name, p, v])
    return path
