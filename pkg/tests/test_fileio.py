import pytest

from seatstorm.core import Method
from seatstorm.fileio import (
    ConfigError,
    ElectionFileError,
    RunConfig,
    load_config,
    load_election,
    read_seats,
    write_election,
)

from conftest import EXAMPLE_VOTES


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_example_file(fixtures):
    e = load_election(fixtures / "example1.csv", RunConfig(seats=6, threshold=100))
    assert e.parties == ("P1", "P2", "P3", "P4", "P5")
    assert e.districts[0].votes == EXAMPLE_VOTES
    assert e.districts[0].tau == 100


def test_ranked_file_top_choices(fixtures):
    cfg = RunConfig(seats=6, threshold=100, parties=["P1", "P2", "P3", "P4", "P5"])
    e = load_election(config=cfg, ranked=fixtures / "example1_ranked.csv")
    prof = e.districts[0].ballots
    assert prof.top_choices().counts == EXAMPLE_VOTES


def test_round_trip(tmp_path, fixtures):
    cfg = RunConfig(threshold="5%")
    e = load_election(fixtures / "synthetic_multi.csv", cfg, seats_file=fixtures / "synthetic_multi.seats.csv")
    assert len(e.districts) == 8
    out = write_election(e, tmp_path / "again.csv")
    back = load_election(out, cfg, seats_file=fixtures / "synthetic_multi.seats.csv")
    assert back == e


def test_missing_party_gets_zero(tmp_path):
    p = write(tmp_path, "v.csv", "district_id,party,votes\na,X,3\na,Y,2\nb,Y,4\n")
    e = load_election(p, RunConfig(seats={"a": 1, "b": 2}))
    assert [d.votes for d in e.districts] == [(3, 2), (0, 4)]
    assert e.seats == 3


def test_tie_break_order(tmp_path):
    p = write(tmp_path, "v.csv", "district_id,party,votes\na,X,3\na,Y,3\n")
    e = load_election(p, RunConfig(seats=1, parties=["Y", "X", "Z"]))
    assert e.parties == ("Y", "X", "Z")
    assert e.outcome(Method.dhondt()) == (1, 0, 0)
    with pytest.raises(ElectionFileError):
        load_election(p, RunConfig(seats=1, parties=["Y"]))


@pytest.mark.parametrize(
    "text, where",
    [
        ("", "empty"),
        ("district,party,votes\na,X,1\n", ":1:"),
        ("district_id,party,votes\na,X,1\na,Y,-2\n", ":3:"),
        ("district_id,party,votes\na,X,1\na,Y,two\n", ":3:"),
        ("district_id,party,votes\na,X,1\na,X,2\n", ":3:"),
        ("district_id,party,votes\na,X\n", ":2:"),
    ],
)
def test_bad_vote_files(tmp_path, text, where):
    p = write(tmp_path, "bad.csv", text)
    with pytest.raises(ElectionFileError, match=where):
        load_election(p, RunConfig(seats=1))


def test_bad_ranked_files(tmp_path):
    p = write(tmp_path, "r.csv", "district_id,multiplicity,ranking\na,2,X>Y\na,1,X>X\n")
    with pytest.raises(ElectionFileError, match=":3:"):
        load_election(config=RunConfig(seats=1), ranked=p)
    p = write(tmp_path, "r2.csv", "district_id,multiplicity,ranking\na,2,X>Y\na,1,Z>X>Y\n")
    with pytest.raises(ElectionFileError, match=":2:"):
        load_election(config=RunConfig(seats=1), ranked=p)


def test_seats_required(tmp_path):
    p = write(tmp_path, "v.csv", "district_id,party,votes\na,X,3\n")
    with pytest.raises(ConfigError):
        load_election(p, RunConfig())
    with pytest.raises(ConfigError):
        load_election(p, RunConfig(seats={"b": 1}))
    s = write(tmp_path, "s.csv", "district_id,seats\na,4\n")
    assert read_seats(s) == {"a": 4}
    assert load_election(p, RunConfig(), seats_file=s).seats == 4


def test_config_validation(tmp_path, fixtures):
    cfg = load_config(fixtures / "synthetic_merge.yaml")
    assert cfg.target == "Alpha" and cfg.experiment["counts"] == [8, 6, 4, 2]
    with pytest.raises(ConfigError, match="unknown config keys"):
        RunConfig.from_dict({"seat": 3})
    with pytest.raises(ConfigError):
        RunConfig(direction="sideways")
    with pytest.raises(ConfigError):
        RunConfig(method="borda")
    with pytest.raises(ConfigError):
        RunConfig(threshold="-1%")
    with pytest.raises(ConfigError):
        RunConfig(budget=-1)
    with pytest.raises(ConfigError):
        RunConfig(experiment={"grid": 1})
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "c.yaml", "method: [unclosed\n"))


def test_merged_overrides():
    cfg = RunConfig(seats=3, experiment={"trials": 3})
    new = cfg.merged({"seats": 5, "budget": None, "experiment": {"counts": [2]}})
    assert new.seats == 5 and new.budget is None
    assert new.experiment == {"trials": 3, "counts": [2]}
