from fractions import Fraction as F

import pytest
from hypothesis import settings

from dyndrf.core import Instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def micro():
    """Three agents, two resources: the worked example used across modules."""
    return Instance.from_rows([[1, F(1, 10)], [F(1, 10), 1], [1, 1]])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[name])
