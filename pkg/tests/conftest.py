import pytest

from smhuim.fixture import load_fixture
from smhuim.utility import UcovUtility

# lines recorded by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def fx():
    return load_fixture()


@pytest.fixture
def ucov(fx):
    return UcovUtility(fx.graph)


@pytest.fixture
def ids(fx):
    return fx.db.dictionary.ids


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
