from fractions import Fraction

import pytest

from seatstorm.alloc import (
    RankedProfile,
    ThresholdSpec,
    UndefinedSupportError,
    effective_threshold,
    qualifying_parties,
    resolve_threshold,
    second_chance_support,
    top_choice_support,
)

from conftest import EXAMPLE_VOTES


def test_top_choice_support_example():
    assert top_choice_support(EXAMPLE_VOTES, 100).support == (1104, 363, 355, 178, 0)


def test_second_chance_support_example(example_profile):
    s = second_chance_support(example_profile, 100)
    assert s.support == (1104, 415, 355, 178, 0)
    assert s.n == 2052


def test_second_chance_without_threshold_is_top_choice(example_profile):
    assert second_chance_support(example_profile, 0).support == EXAMPLE_VOTES


def test_second_chance_nobody_qualifies(example_profile):
    with pytest.raises(UndefinedSupportError):
        second_chance_support(example_profile, 5000)


def test_profile_merges_equal_rankings():
    a = RankedProfile((((0, 1), 2), ((1, 0), 1), ((0, 1), 3)), 2)
    assert a.ballots == (((0, 1), 5), ((1, 0), 1))
    assert a.top_choices().counts == (5, 1)
    with pytest.raises(ValueError):
        RankedProfile((((0, 0), 1),), 2)


def test_threshold_parsing():
    assert ThresholdSpec.parse("100") == ThresholdSpec.absolute(100)
    assert ThresholdSpec.parse("5%").value == Fraction(1, 20)
    assert ThresholdSpec.parse("1/150").value == Fraction(1, 150)
    assert ThresholdSpec.parse("0.0325").value == Fraction(13, 400)
    with pytest.raises(ValueError):
        ThresholdSpec.parse("150%")


def test_relative_threshold_rounds_up():
    assert resolve_threshold(ThresholdSpec.parse("5%"), 2052) == 103
    assert resolve_threshold(ThresholdSpec.parse("5%"), 2000) == 100
    assert resolve_threshold(ThresholdSpec.relative(0.0325), 400) == 13
    assert resolve_threshold(7, 10) == 7


def test_zero_threshold_means_one_vote():
    assert effective_threshold(0) == 1
    assert qualifying_parties((0, 2, 1), 0) == [False, True, True]
    assert qualifying_parties((0, 2, 1), 2) == [False, True, False]
