"""Seat apportionment and optimal campaign bribery for party-list elections."""
from .alloc import RankedProfile, ThresholdSpec, resolve_threshold, second_chance_support, top_choice_support
from .core import (
    DHONDT,
    SAINTE_LAGUE,
    ApportionmentProblem,
    DivisorSequence,
    Method,
    SeatAllocation,
    SupportAllocation,
    aggregate_districts,
    apportion,
)
from .heuristics import Strategy, effectiveness_ratios, run_strategy
from .oracle import InstanceTooLargeError, oracle_decide_second_chance, oracle_decide_top_choice
from .problem import (
    CONSTRUCTIVE,
    DESTRUCTIVE,
    SEATS,
    WINNER,
    BriberyInstance,
    CampaignPlan,
    Decision,
    District,
    Election,
    Move,
)
from .solvers_multi import dmab, fptp_dmawb, mab, multi_min_budget, winner_multi_search
from .solvers_single import max_seat_delta, min_budget, solve

__version__ = "0.1.0"

__all__ = [
    "RankedProfile",
    "ThresholdSpec",
    "resolve_threshold",
    "second_chance_support",
    "top_choice_support",
    "DHONDT",
    "SAINTE_LAGUE",
    "ApportionmentProblem",
    "DivisorSequence",
    "Method",
    "SeatAllocation",
    "SupportAllocation",
    "aggregate_districts",
    "apportion",
    "Strategy",
    "effectiveness_ratios",
    "run_strategy",
    "InstanceTooLargeError",
    "oracle_decide_second_chance",
    "oracle_decide_top_choice",
    "CONSTRUCTIVE",
    "DESTRUCTIVE",
    "SEATS",
    "WINNER",
    "BriberyInstance",
    "CampaignPlan",
    "Decision",
    "District",
    "Election",
    "Move",
    "dmab",
    "fptp_dmawb",
    "mab",
    "multi_min_budget",
    "winner_multi_search",
    "max_seat_delta",
    "min_budget",
    "solve",
]
