from fractions import Fraction

import pytest

from seatstorm.core import (
    DHONDT,
    SAINTE_LAGUE,
    ApportionmentProblem,
    DivisorSequence,
    Method,
    SupportAllocation,
    UndefinedAllocationError,
    aggregate_districts,
    allocate,
    apportion,
)

from conftest import EXAMPLE_VOTES


def problem(votes=EXAMPLE_VOTES, tau=100, k=6):
    return ApportionmentProblem(SupportAllocation(votes), tau, k)


def test_dhondt_example():
    assert tuple(apportion(problem(), Method.dhondt())) == (4, 1, 1, 0, 0)


def test_lrm_example():
    assert tuple(apportion(problem(), Method.lrm())) == (3, 1, 1, 1, 0)


def test_fptp_example():
    assert tuple(apportion(problem(), Method.fptp())) == (6, 0, 0, 0, 0)


def test_sainte_lague_differs_from_dhondt():
    # 1104/1, 1104/3 and 363/1, 355/1, 1104/5, 178/1 are the six largest
    assert tuple(apportion(problem(), Method.sainte_lague())) == (3, 1, 1, 1, 0)


def test_ties_go_to_earlier_party():
    assert allocate((3, 3), 1, Method.dhondt()) == (1, 0)
    assert allocate((3, 3), 1, Method.lrm()) == (1, 0)
    assert allocate((0, 3, 3), 1, Method.fptp()) == (0, 1, 0)
    assert allocate((2, 2, 2), 4, Method.sainte_lague()) == (2, 1, 1)


def test_all_zero_support_is_undefined():
    with pytest.raises(UndefinedAllocationError):
        allocate((0, 0), 2, Method.dhondt())


def test_seats_sum_to_house_size():
    for method in (Method.dhondt(), Method.sainte_lague(), Method.lrm(), Method.fptp()):
        for k in range(1, 10):
            assert sum(allocate((7, 5, 3, 1), k, method)) == k


def test_divisor_sequences():
    assert DHONDT.prefix(4) == [1, 2, 3, 4]
    assert SAINTE_LAGUE.prefix(3) == [1, 3, 5]
    seq = DivisorSequence.from_values(["1.4", 3, 5])
    assert seq(1) == Fraction(7, 5)
    with pytest.raises(ValueError):
        seq(4)
    with pytest.raises(ValueError):
        DivisorSequence.from_values([1, 1])(2)
    with pytest.raises(ValueError):
        DivisorSequence.from_values(["0.5"])(1)


def test_custom_method_from_name():
    m = Method.from_name("custom", ["1.4", 3, 5, 7, 9, 11])
    # modified Sainte-Lague raises the bar for a first seat
    assert allocate((10, 13), 2, m) == (1, 1)
    with pytest.raises(ValueError):
        Method.from_name("custom")
    with pytest.raises(ValueError):
        Method.from_name("borda")


def test_threshold_zeroes_small_parties():
    assert tuple(apportion(problem(tau=200), Method.dhondt())) == (4, 1, 1, 0, 0)
    assert tuple(apportion(problem(tau=400), Method.lrm())) == (6, 0, 0, 0, 0)


def test_aggregate_districts():
    total = aggregate_districts([(1, 2), (3, 0, 1)])
    assert tuple(total) == (4, 2, 1)


def test_method_names():
    assert Method.from_name("D'Hondt") == Method.dhondt()
    assert Method.from_name("webster") == Method.sainte_lague()
    assert str(Method.lrm()) == "lrm"
