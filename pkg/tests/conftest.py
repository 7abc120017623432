from pathlib import Path

import pytest

from seatstorm.alloc import RankedProfile

FIXTURES = Path(__file__).parent / "fixtures"

EXAMPLE_VOTES = (1104, 363, 355, 178, 52)

# the eight voter groups of the running five-party example, 0-based rankings
EXAMPLE_BALLOTS = (
    ((0, 1, 2, 4, 3), 604),
    ((1, 0, 4, 3, 2), 215),
    ((2, 1, 0, 3, 4), 355),
    ((0, 4, 2, 1, 3), 300),
    ((3, 1, 2, 0, 4), 178),
    ((1, 3, 2, 0, 4), 148),
    ((0, 2, 3, 4, 1), 200),
    ((4, 1, 2, 3, 0), 52),
)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def example_profile():
    return RankedProfile(EXAMPLE_BALLOTS, 5)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
