import pytest

from stacksp.core import StackInstance
from stacksp.labelcover import LabelCoverInstance

ACCEPTANCE_LINES = []


@pytest.fixture
def graph_y():
    # nodes s=0, a=1, b=2, t=3; edge ids 0..4 = s->t, e1, a->t, e2, e3
    return StackInstance.build(
        4,
        [(0, 3, "fixed", 4), (0, 1, "pricable", 0), (1, 3, "fixed", 1), (0, 2, "pricable", 0), (2, 3, "pricable", 0)],
        0,
        3,
    )


@pytest.fixture
def lc1():
    return LabelCoverInstance.make(1, 1, 2, [(0, 0, [(1, 1)])])


@pytest.fixture
def lc2():
    return LabelCoverInstance.make(1, 2, 2, [(0, 0, [(1, 1)]), (0, 1, [(2, 1)])])


@pytest.fixture
def lc3():
    return LabelCoverInstance.make(1, 3, 2, [(0, 0, [(1, 1)]), (0, 1, [(1, 1), (2, 1)]), (0, 2, [(2, 1)])])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
