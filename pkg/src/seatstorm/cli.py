"""Command-line interface.

Exit status: 0 on success, 1 when ``--assert-yes`` meets a NO decision (or
``oracle-check`` finds a disagreement), 2 on any input or usage error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

import yaml

from . import datasets, experiments, heuristics, plotting
from .core import Method
from .fileio import ConfigError, ElectionFileError, RunConfig, load_config, load_election
from .oracle import (
    InstanceTooLargeError,
    multi_district_min_budget,
    oracle_decide_second_chance,
    second_chance_min_budget,
)
from .problem import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    SEATS,
    SECOND_CHANCE,
    TOP_CHOICE,
    WINNER,
    Election,
    ranked_outcome,
    seat_outcome,
)
from .solvers_multi import dmab, fptp_dmawb, mab, multi_min_budget, winner_multi_search
from .solvers_single import min_budget, solve
from .validation import METHODS, single_district_check

__all__ = ["main", "build_parser"]


class UsageError(ValueError):
    pass


def _csv_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _int_list(text):
    try:
        return [int(x) for x in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _data_args(p):
    g = p.add_argument_group("election data")
    g.add_argument("--config", help="YAML run configuration; flags override its values")
    g.add_argument("--votes", help="top-choice CSV (district_id,party,votes)")
    g.add_argument("--ranked", help="ranked-ballot CSV (district_id,multiplicity,ranking)")
    g.add_argument("--seats-file", help="CSV with district_id,seats")
    g.add_argument("--dataset", help=f"manifest dataset code ({', '.join(datasets.MANIFEST)})")
    g.add_argument("--data-dir", help=f"dataset directory (default: ${datasets.ENV_VAR})")
    g.add_argument("--seats", type=int, help="seats in every district")
    g.add_argument("--method", help="fptp, dhondt, sainte-lague, lrm or custom")
    g.add_argument("--divisors", type=_csv_list, help="custom divisor sequence, e.g. 1.4,3,5,7")
    g.add_argument("--threshold", help="absolute votes (100) or relative (5%%, 0.05, 1/150)")
    g.add_argument("--parties", type=_csv_list, help="tie-break order, comma separated")
    g.add_argument("--mode", choices=["top-choice", SECOND_CHANCE])


def _goal_args(p, level=True, budget=True):
    g = p.add_argument_group("bribery goal")
    g.add_argument("--target", help="distinguished party: name or 1-based position")
    g.add_argument("--direction", choices=[CONSTRUCTIVE, DESTRUCTIVE])
    if level:
        g.add_argument("--objective", choices=[SEATS, WINNER])
        g.add_argument("--l", "--level", dest="level", type=int, help="seat level for the seat objective")
    if budget:
        g.add_argument("--k", "--budget", dest="budget", type=int, help="number of vote changes allowed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seatstorm", description="Seat apportionment and optimal campaign bribery.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apportion", help="compute the seat allocation")
    _data_args(p)
    p.add_argument("--out", help="write per-district seats to this CSV")

    p = sub.add_parser("bribe", help="decide a bribery problem and print a witness")
    _data_args(p)
    _goal_args(p)
    p.add_argument("--assert-yes", action="store_true", help="exit 1 on a NO decision")

    p = sub.add_parser("min-budget", help="smallest budget meeting the goal")
    _data_args(p)
    _goal_args(p, budget=False)
    p.add_argument("--max-budget", type=int, help="search cap (required for second-chance mode)")

    p = sub.add_parser("sweep", help="seats gained or lost as the threshold varies")
    _data_args(p)
    _goal_args(p, level=False, budget=False)
    p.add_argument("--budget-fraction", help="budget as a fraction of all ballots, e.g. 0.0025")
    p.add_argument("--grid", help="lo:hi:step in percent (default 0:12:0.05)")
    p.add_argument("--out-dir", default=".", help="directory for sweep.dat and sweep.png")

    p = sub.add_parser("merge-experiment", help="budget per seat as districts are merged")
    _data_args(p)
    _goal_args(p, budget=False)
    p.add_argument("--counts", type=_int_list, help="district counts to evaluate, e.g. 41,31,21,11")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", default=".", help="directory for merge.csv and merge.png")

    p = sub.add_parser("heuristics-compare", help="simple strategies against the optimal budget")
    _data_args(p)
    g = p.add_argument_group("goal")
    g.add_argument("--direction", choices=[CONSTRUCTIVE, DESTRUCTIVE])
    p.add_argument("--label", help="row label in the report (default: data file stem)")
    p.add_argument("--out-dir", default=".", help="directory for heuristics.csv and heuristics.png")

    p = sub.add_parser("oracle-check", help="cross-check the solvers against brute force on a small grid")
    p.add_argument("--methods", type=_csv_list, default=list(METHODS), help="comma separated method names")
    p.add_argument("--max-votes", type=int, default=6)
    p.add_argument("--parties", type=_int_list, default=[2, 3, 4])
    p.add_argument("--seats", type=_int_list, default=[1, 2, 3])
    p.add_argument("--thresholds", type=_int_list, default=[0, 2, 3])
    p.add_argument("--max-budget", type=int, default=3)
    return ap


# --- helpers --------------------------------------------------------------

_OVERRIDES = ("method", "divisors", "threshold", "seats", "parties", "mode", "objective", "direction",
              "target", "level", "budget", "budget_fraction", "seed", "votes", "ranked", "seats_file", "dataset")


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    over = {k: getattr(args, k, None) for k in _OVERRIDES}
    exp = {}
    if getattr(args, "counts", None) is not None:
        exp["counts"] = args.counts
    if getattr(args, "trials", None) is not None:
        exp["trials"] = args.trials
    if getattr(args, "grid", None):
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise UsageError("--grid expects lo:hi:step")
        exp.update(grid_lo=parts[0], grid_hi=parts[1], grid_step=parts[2])
    if exp:
        over["experiment"] = exp
    return cfg.merged(over)


def _election(cfg: RunConfig, args):
    if cfg.dataset:
        el, method = datasets.load_dataset(cfg.dataset, getattr(args, "data_dir", None))
        if getattr(args, "method", None) or (getattr(args, "config", None) and cfg.method != "dhondt"):
            method = cfg.build_method()
        return el, method
    if cfg.votes is None and cfg.ranked is None:
        raise UsageError("no election data: give --votes, --ranked or --dataset")
    if cfg.votes is not None and cfg.ranked is not None:
        raise UsageError("give either --votes or --ranked, not both")
    if cfg.mode == SECOND_CHANCE and cfg.ranked is None:
        raise UsageError("second-chance mode needs --ranked ballots")
    el = load_election(cfg.votes, cfg, ranked=cfg.ranked, seats_file=cfg.seats_file)
    if cfg.mode == TOP_CHOICE and cfg.ranked is not None:
        # top-choice mode only looks at first preferences
        el = Election(el.parties, tuple(replace(d, ballots=None) for d in el.districts))
    return el, cfg.build_method()


def _target(cfg: RunConfig, el: Election) -> int:
    t = cfg.target
    if t is None:
        raise UsageError("--target is required")
    if isinstance(t, str) and t in el.parties:
        return el.parties.index(t)
    try:
        pos = int(t)
    except (TypeError, ValueError):
        raise UsageError(f"unknown party {t!r}; parties are {', '.join(el.parties)}") from None
    if not 1 <= pos <= len(el.parties):
        raise UsageError(f"party position {pos} outside 1..{len(el.parties)}")
    return pos - 1


def _level(cfg: RunConfig):
    if cfg.objective == SEATS and cfg.level is None:
        raise UsageError("the seat objective needs --l")
    return cfg.level if cfg.objective == SEATS else None


def _print_table(header, rows, out=None):
    out = out or sys.stdout
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip() + "\n")


def _print_plan(el: Election, plan):
    if not plan or not plan.moves:
        print("plan: no moves")
        return
    print(f"plan ({plan.cost} moves):")
    multi = len(el.districts) > 1
    for mv in plan.moves:
        where = f" in {el.districts[mv.district].name or mv.district}" if multi else ""
        print(f"  {mv.count} x {el.parties[mv.source]} -> {el.parties[mv.dest]}{where}")


def _seats_after(el: Election, plan, method):
    total = [0] * len(el.parties)
    for j, d in enumerate(el.districts):
        if d.ballots is not None:
            seats = ranked_outcome(plan.apply_ranked(d.ballots), d.seats, method, d.tau)
        else:
            seats = seat_outcome(plan.apply(d.votes, j), d.seats, method, d.tau)
        for i, s in enumerate(seats):
            total[i] += s
    return total


# --- commands -------------------------------------------------------------

def cmd_apportion(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    rows = []
    per = []
    for d in el.districts:
        sub = Election(el.parties, (d,)).outcome(method)
        per.append(sub)
    total = [sum(s[i] for s in per) for i in range(len(el.parties))]
    for i, p in enumerate(el.parties):
        rows.append((p, sum(d.votes[i] for d in el.districts), total[i]))
    print(f"method {method}, {len(el.districts)} district(s), {el.seats} seats")
    _print_table(("party", "votes", "seats"), rows)
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["district_id", "party", "votes", "seats"])
            for j, (d, seats) in enumerate(zip(el.districts, per)):
                for p, v, s in zip(el.parties, d.votes, seats):
                    w.writerow([d.name or j, p, v, s])
    return 0


def _decide(el: Election, method: Method, target: int, cfg: RunConfig):
    level = _level(cfg)
    k = cfg.budget if cfg.budget is not None else 0
    obj, dr = cfg.objective, cfg.direction
    if len(el.districts) == 1:
        inst = el.districts[0].instance(method, target, objective=obj, direction=dr, level=level, budget=k)
        if inst.ballots is not None:
            return oracle_decide_second_chance(inst)[0]
        return solve(inst)
    if any(d.ballots is not None for d in el.districts):
        raise UsageError("second-chance bribery is only supported for a single district")
    if obj == SEATS:
        return (mab if dr == CONSTRUCTIVE else dmab)(el, target, level, k, method)
    if method.kind == "fptp" and dr == DESTRUCTIVE:
        return fptp_dmawb(el, target, k)
    return winner_multi_search(el, target, k, method, dr)


def cmd_bribe(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    target = _target(cfg, el)
    d = _decide(el, method, target, cfg)
    goal = f"level {cfg.level}" if cfg.objective == SEATS else "winner"
    print(f"{cfg.direction} {cfg.objective} ({goal}) for {el.parties[target]} with budget "
          f"{cfg.budget or 0}: {'YES' if d else 'NO'}")
    if d:
        _print_plan(el, d.plan)
        if d.plan is not None:
            after = _seats_after(el, d.plan, method)
            _print_table(("party", "seats before", "seats after"),
                         [(p, b, a) for p, b, a in zip(el.parties, el.outcome(method), after)])
    return 1 if (args.assert_yes and not d) else 0


def cmd_min_budget(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    target = _target(cfg, el)
    level = _level(cfg)
    obj, dr = cfg.objective, cfg.direction
    cap = args.max_budget
    if len(el.districts) == 1:
        inst = el.districts[0].instance(method, target, objective=obj, direction=dr, level=level)
        if inst.ballots is not None:
            if cap is None:
                raise UsageError("second-chance mode needs --max-budget")
            best, _ = second_chance_min_budget(inst, cap)
        else:
            best, _ = min_budget(inst, max_budget=cap)
    elif obj == SEATS:
        best = multi_min_budget(el, target, level, method, dr)
        if best is not None and cap is not None and best > cap:
            best = None
    elif method.kind == "fptp" and dr == DESTRUCTIVE:
        hi = el.n if cap is None else cap
        best = None
        if fptp_dmawb(el, target, hi):
            lo = -1
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if fptp_dmawb(el, target, mid):
                    hi = mid
                else:
                    lo = mid
            best = hi
    else:
        triples = [(d.votes, d.seats, d.tau) for d in el.districts]
        best, _ = multi_district_min_budget(triples, method, target, obj, dr, level, budget_cap=cap)
    print("infeasible" if best is None else best)
    return 0


def cmd_sweep(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    target = _target(cfg, el)
    if cfg.budget_fraction is None:
        raise UsageError("--budget-fraction is required")
    ex = cfg.experiment
    grid = experiments.default_grid(ex.get("grid_lo", "0"), ex.get("grid_hi", "12"), ex.get("grid_step", "0.05"))
    res = experiments.threshold_sweep(el, target, cfg.budget_fraction, grid, method, cfg.direction)
    out = Path(args.out_dir)
    experiments.write_sweep(res, out / "sweep.dat")
    plotting.plot_sweep(res, out / "sweep.png", title=f"{el.parties[target]}, {cfg.direction}")
    peak = max(res.points, key=lambda p: (p[1], -p[0]))
    print(f"budget {res.budget} votes; peak {peak[1]} seats at threshold {float(peak[0]):g}%")
    print(f"wrote {out / 'sweep.dat'} and {out / 'sweep.png'}")
    return 0


def cmd_merge(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    target = _target(cfg, el)
    q = len(el.districts)
    counts = cfg.experiment.get("counts") or [q, max(1, q // 2), 1]
    trials = int(cfg.experiment.get("trials", 3))
    plan = experiments.MergePlan.draw(q, q - min(counts), cfg.seed, trials)
    res = experiments.district_merge_experiment(el, target, plan, counts, method, cfg.direction, cfg.level)
    out = Path(args.out_dir)
    experiments.write_merge(res, out / "merge.csv")
    plotting.plot_merge(res, out / "merge.png", title=f"{el.parties[target]}, {cfg.direction}")
    _print_table(("districts", "mean budget", "per seat", "ratio"),
                 [(r.districts, experiments.fmt(sum(r.budgets) / len(r.budgets)), experiments.fmt(r.per_seat),
                   experiments.fmt(r.ratio)) for r in res.rows])
    print(f"wrote {out / 'merge.csv'} and {out / 'merge.png'}")
    return 0


def cmd_heuristics(args) -> int:
    cfg = _config(args)
    el, method = _election(cfg, args)
    label = args.label or cfg.dataset or (Path(cfg.votes).stem if cfg.votes else "election")
    report = experiments.effectiveness_experiment({label: (el, method)}, cfg.direction)
    out = Path(args.out_dir)
    experiments.write_effectiveness(report, out / "heuristics.csv")
    plotting.plot_effectiveness(report, out / "heuristics.png")
    _print_table(("strategy", *experiments.SELECTIONS),
                 [(k, *(experiments.fmt(row[s]) for s in experiments.SELECTIONS)) for _, k, row in report.cells])
    print(f"wrote {out / 'heuristics.csv'} and {out / 'heuristics.png'}")
    return 0


def cmd_oracle_check(args) -> int:
    try:
        methods = [Method.from_name(m) for m in args.methods]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = single_district_check(methods, parties=tuple(args.parties), max_votes=args.max_votes,
                                seats=tuple(args.seats), taus=tuple(args.thresholds),
                                budgets=range(args.max_budget + 1))
    print(rep.summary())
    for inst in rep.mismatches[:10]:
        print(f"  mismatch: {inst}")
    return 0 if rep.ok else 1


COMMANDS = {
    "apportion": cmd_apportion,
    "bribe": cmd_bribe,
    "min-budget": cmd_min_budget,
    "sweep": cmd_sweep,
    "merge-experiment": cmd_merge,
    "heuristics-compare": cmd_heuristics,
    "oracle-check": cmd_oracle_check,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, ElectionFileError, InstanceTooLargeError, heuristics.InfeasibleStrategyError,
            datasets.DatasetMissingError, datasets.ChecksumError, FileNotFoundError, yaml.YAMLError,
            KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
