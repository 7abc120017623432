"""Real-election datasets: manifest and loader.

The vote data is not shipped with the package.  Put the files for a
country into the directory named by ``SEATSTORM_DATA_DIR`` (or pass
``data_dir``):

* ``<code>.csv`` with ``district_id,party,votes`` rows;
* ``<code>.seats.csv`` with ``district_id,seats`` rows (multi-district
  countries only; single-district ones use the parliament size).

An optional ``SHA256SUMS`` file in the same directory (``sha256sum``
format) is checked before loading, so a recorded download can be pinned.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .core import Method
from .fileio import RunConfig, load_election
from .problem import Election

__all__ = ["DatasetInfo", "MANIFEST", "DatasetMissingError", "ChecksumError", "data_dir", "dataset_paths",
           "available", "load_dataset", "check_election"]

ENV_VAR = "SEATSTORM_DATA_DIR"


class DatasetMissingError(FileNotFoundError):
    """A dataset file is absent; the message explains where to put it."""


class ChecksumError(ValueError):
    """A dataset file does not match its recorded SHA-256 sum."""


@dataclass(frozen=True)
class DatasetInfo:
    code: str
    country: str
    year: int
    districts: int
    seats: int
    threshold: str  # applied to every party in every district
    ballots: int  # valid votes, for a sanity check after loading
    method: str = "dhondt"


MANIFEST = {
    info.code: info
    for info in (
        DatasetInfo("austria-2019", "Austria", 2019, 1, 183, "4%", 4_777_246),
        DatasetInfo("israel-2022", "Israel", 2022, 1, 120, "3.25%", 4_764_742),
        DatasetInfo("netherlands-2023", "The Netherlands", 2023, 1, 150, "1/150", 10_432_526),
        DatasetInfo("poland-2023", "Poland", 2023, 41, 460, "5%", 21_596_674),
        DatasetInfo("portugal-2024", "Portugal", 2024, 22, 230, "0", 6_194_290),
        DatasetInfo("argentina-2021", "Argentina", 2021, 24, 127, "3%", 23_602_493),
    )
}


def data_dir(override=None) -> Optional[Path]:
    d = override or os.environ.get(ENV_VAR)
    return Path(d) if d else None


def dataset_paths(code: str, directory=None):
    info = _info(code)
    root = data_dir(directory)
    if root is None:
        return None, None
    seats = root / f"{code}.seats.csv" if info.districts > 1 else None
    return root / f"{code}.csv", seats


def _info(code: str) -> DatasetInfo:
    try:
        return MANIFEST[code]
    except KeyError:
        raise KeyError(f"unknown dataset {code!r}; known: {', '.join(MANIFEST)}") from None


def available(code: str, directory=None) -> bool:
    votes, seats = dataset_paths(code, directory)
    return votes is not None and votes.is_file() and (seats is None or seats.is_file())


def _fetch_hint(code: str) -> str:
    info = _info(code)
    files = f"{code}.csv" + (f" and {code}.seats.csv" if info.districts > 1 else "")
    return (f"dataset {code!r} ({info.country} {info.year}) not found. Download the official results, "
            f"convert them to {files} (see the README section on datasets) and set {ENV_VAR} to their directory.")


def _verify(path: Path) -> None:
    sums = path.parent / "SHA256SUMS"
    if not sums.is_file():
        return
    for line in sums.read_text(encoding="utf-8").splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[1].lstrip("*") == path.name:
            got = hashlib.sha256(path.read_bytes()).hexdigest()
            if got != parts[0].lower():
                raise ChecksumError(f"{path}: sha256 {got} does not match SHA256SUMS")
            return


def load_dataset(code: str, directory=None):
    '''Load a manifest dataset as ``(election, method)``.'''
    info = _info(code)
    if not available(code, directory):
        raise DatasetMissingError(_fetch_hint(code))
    votes, seats = dataset_paths(code, directory)
    for p in (votes, seats):
        if p is not None:
            _verify(p)
    cfg = RunConfig(method=info.method, threshold=info.threshold, seats=info.seats if seats is None else None)
    election = load_election(votes, cfg, seats_file=seats)
    return election, Method.from_name(info.method)


def check_election(election: Election, code: str) -> list:
    '''Differences between a loaded election and the manifest (empty when it matches).'''
    info = _info(code)
    problems = []
    if len(election.districts) != info.districts:
        problems.append(f"{len(election.districts)} districts, expected {info.districts}")
    if election.seats != info.seats:
        problems.append(f"{election.seats} seats, expected {info.seats}")
    if election.n != info.ballots:
        problems.append(f"{election.n} votes, expected {info.ballots}")
    return problems
