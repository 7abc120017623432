import hashlib

import pytest

from seatstorm.core import Method
from seatstorm.datasets import (
    ENV_VAR,
    MANIFEST,
    ChecksumError,
    DatasetMissingError,
    available,
    check_election,
    load_dataset,
)


def test_manifest():
    assert set(MANIFEST) == {"austria-2019", "israel-2022", "netherlands-2023", "poland-2023",
                             "portugal-2024", "argentina-2021"}
    assert MANIFEST["poland-2023"].districts == 41
    assert sum(i.seats for i in MANIFEST.values()) == 183 + 120 + 150 + 460 + 230 + 127


def test_missing_dataset_message(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert not available("israel-2022")
    with pytest.raises(DatasetMissingError, match="israel-2022.csv"):
        load_dataset("israel-2022")
    with pytest.raises(DatasetMissingError, match="poland-2023.seats.csv"):
        load_dataset("poland-2023")
    with pytest.raises(KeyError):
        load_dataset("atlantis-1900")


def test_missing_without_env(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    with pytest.raises(DatasetMissingError):
        load_dataset("austria-2019")


def test_load_and_checksum(tmp_path):
    votes = tmp_path / "israel-2022.csv"
    votes.write_text("district_id,party,votes\nIL,A,600\nIL,B,300\nIL,C,100\n")
    election, method = load_dataset("israel-2022", tmp_path)
    assert election.seats == 120 and election.districts[0].tau == 33  # ceil(3.25% of 1000)
    assert method == Method.dhondt()
    assert "votes" in " ".join(check_election(election, "israel-2022"))

    digest = hashlib.sha256(votes.read_bytes()).hexdigest()
    (tmp_path / "SHA256SUMS").write_text(f"{digest}  israel-2022.csv\n")
    load_dataset("israel-2022", tmp_path)
    (tmp_path / "SHA256SUMS").write_text(f"{'0' * 64}  israel-2022.csv\n")
    with pytest.raises(ChecksumError):
        load_dataset("israel-2022", tmp_path)
