"""Small ranked profiles where bribery works by moving parties across the threshold."""
from seatstorm.alloc import RankedProfile
from seatstorm.core import Method
from seatstorm.problem import CONSTRUCTIVE, DESTRUCTIVE, SEATS, WINNER, BriberyInstance

A, B, C, D = 0, 1, 2, 3


def _inst(ballots, m, seats, method, tau, target, objective, direction, level=None):
    prof = RankedProfile(tuple(ballots), m)
    return BriberyInstance((), seats, method, target, tau, objective, direction, level, ballots=prof)


CASES = {
    # B sits just below the threshold and its ballots feed C
    "lift-below-threshold": _inst(
        [((A, B, C), 4), ((B, C, A), 2), ((C, B, A), 3)], 3, 2, Method.dhondt(), 3, B, SEATS, CONSTRUCTIVE, 1),
    # C lives on B's diverted ballots; lifting B over the threshold starves C
    "starve-by-lifting": _inst(
        [((A, C, B), 4), ((B, C, A), 2), ((C, A, B), 3)], 3, 2, Method.dhondt(), 3, C, SEATS, DESTRUCTIVE, 0),
    # pushing a rival below the threshold sends its ballots to A
    "push-rival-below": _inst(
        [((A, B, C), 3), ((B, A, C), 3), ((C, A, B), 3)], 3, 2, Method.lrm(), 3, A, WINNER, CONSTRUCTIVE),
    # a four-party chain: D's ballots pass through C to B once C drops out
    "chain-diversion": _inst(
        [((A, B, C, D), 4), ((B, A, C, D), 3), ((C, B, A, D), 3), ((D, C, B, A), 2)], 4, 3,
        Method.dhondt(), 3, B, SEATS, CONSTRUCTIVE, 2),
    # B leads only thanks to C's diverted ballots
    "feeder-qualifies": _inst(
        [((A, B, C), 4), ((B, A, C), 3), ((C, B, A), 2)], 3, 3, Method.sainte_lague(), 3, B, WINNER, DESTRUCTIVE),
    # FPTP with the winner decided by diverted ballots
    "fptp-diversion": _inst(
        [((A, B, C), 4), ((B, C, A), 3), ((C, B, A), 2)], 3, 1, Method.fptp(), 3, B, SEATS, DESTRUCTIVE, 0),
}
