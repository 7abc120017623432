import subprocess
import sys

import pytest

from seatstorm.cli import main

EXAMPLE = ["--votes", "tests/fixtures/example1.csv", "--seats", "6", "--threshold", "100"]


@pytest.fixture(autouse=True)
def _repo_root(monkeypatch, fixtures):
    monkeypatch.chdir(fixtures.parent.parent)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_apportion(capsys, tmp_path):
    code, out, _ = run(capsys, "apportion", *EXAMPLE, "--out", str(tmp_path / "seats.csv"))
    assert code == 0
    rows = [ln.split() for ln in out.splitlines() if ln.startswith("P")]
    assert [int(r[-1]) for r in rows] == [4, 1, 1, 0, 0]
    assert (tmp_path / "seats.csv").read_text().splitlines()[1] == "d1,P1,1104,4"


def test_bribe_yes_and_no(capsys):
    code, out, _ = run(capsys, "bribe", *EXAMPLE, "--target", "P1", "--l", "4", "--k", "0")
    assert code == 0 and "YES" in out
    code, out, _ = run(capsys, "bribe", *EXAMPLE, "--target", "4", "--l", "1", "--k", "1", "--assert-yes")
    assert code == 1 and "NO" in out
    code, _, _ = run(capsys, "bribe", *EXAMPLE, "--target", "4", "--l", "1", "--k", "1")
    assert code == 0


def test_bribe_prints_witness(capsys):
    code, out, _ = run(capsys, "bribe", *EXAMPLE, "--target", "P2", "--l", "2", "--k", "300", "--assert-yes")
    assert code == 0 and "YES" in out and "seats after" in out


def test_min_budget_matches_library(capsys):
    from seatstorm.core import Method
    from seatstorm.problem import BriberyInstance
    from seatstorm.solvers_single import min_budget
    from conftest import EXAMPLE_VOTES

    code, out, _ = run(capsys, "min-budget", *EXAMPLE, "--target", "P2", "--l", "2")
    inst = BriberyInstance(EXAMPLE_VOTES, 6, Method.dhondt(), 1, 100, level=2)
    assert code == 0 and int(out.strip()) == min_budget(inst)[0]


def test_second_chance_cli(capsys):
    ranked = ["--ranked", "tests/fixtures/example1_ranked.csv", "--seats", "6", "--threshold", "100",
              "--parties", "P1,P2,P3,P4,P5"]
    code, out, _ = run(capsys, "bribe", *ranked, "--target", "P1", "--l", "4", "--k", "0")
    assert code == 0 and "YES" in out
    code, _, err = run(capsys, "min-budget", *ranked, "--mode", "second-chance", "--target", "P1", "--l", "4")
    assert code == 2 and "max-budget" in err


def test_multi_district(capsys):
    data = ["--votes", "tests/fixtures/synthetic_multi.csv", "--seats-file",
            "tests/fixtures/synthetic_multi.seats.csv", "--threshold", "5%"]
    code, out, _ = run(capsys, "min-budget", *data, "--target", "Beta", "--l", "1")
    assert code == 0 and out.strip() == "0"
    winner = ["--target", "Alpha", "--objective", "winner", "--direction", "destructive", "--k", "0"]
    # exhaustive multi-district winner search refuses eight districts
    code, _, err = run(capsys, "bribe", *data, *winner)
    assert code == 2 and "limit" in err
    code, out, _ = run(capsys, "bribe", *data, *winner, "--method", "fptp")
    assert code == 0 and "NO" in out


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "apportion", "--votes", str(tmp_path / "none.csv"), "--seats", "1")[0] == 2
    assert run(capsys, "bribe", *EXAMPLE, "--target", "Nobody", "--l", "1")[0] == 2
    assert run(capsys, "bribe", *EXAMPLE, "--target", "9", "--l", "1")[0] == 2
    assert run(capsys, "bribe", *EXAMPLE, "--target", "P1")[0] == 2
    assert run(capsys, "apportion", "--seats", "1")[0] == 2
    assert run(capsys, "sweep", *EXAMPLE, "--target", "P1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bribe", "--no-such-flag"])
    assert exc.value.code == 2


def test_dataset_missing(capsys, tmp_path):
    code, _, err = run(capsys, "apportion", "--dataset", "austria-2019", "--data-dir", str(tmp_path))
    assert code == 2 and "austria-2019.csv" in err


def test_sweep_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", *EXAMPLE, "--target", "P2", "--budget-fraction", "0.05",
                       "--grid", "0:10:2", "--out-dir", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "sweep.dat").read_text().splitlines()
    assert [ln.split()[0] for ln in lines] == ["0", "2", "4", "6", "8", "10"]
    assert (tmp_path / "sweep.png").read_bytes()[:4] == b"\x89PNG"


def test_merge_from_config(capsys, tmp_path):
    code, out, _ = run(capsys, "merge-experiment", "--config", "tests/fixtures/synthetic_merge.yaml",
                       "--counts", "8,4,1", "--out-dir", str(tmp_path))
    assert code == 0
    rows = (tmp_path / "merge.csv").read_text().splitlines()
    assert len(rows) == 1 + 3 * 3
    assert (tmp_path / "merge.png").is_file()


def test_heuristics_compare(capsys, tmp_path):
    code, out, _ = run(capsys, "heuristics-compare", *EXAMPLE, "--label", "example", "--out-dir", str(tmp_path))
    assert code == 0
    rows = (tmp_path / "heuristics.csv").read_text().splitlines()
    assert rows[0] == "country,strategy,average,strongest,weakest"
    assert rows[1].startswith("example,optimal,1.00000")


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--methods", "dhondt", "--max-votes", "3", "--parties", "2,3",
                       "--seats", "1,2", "--thresholds", "0", "--max-budget", "1")
    assert code == 0 and "agree" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "seatstorm", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "oracle-check" in res.stdout
