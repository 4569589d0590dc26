from pathlib import Path

import pytest

from nlq.pipeline import Session

FIXTURES = Path(__file__).parent / "fixtures"
GRID_SCHEMA = FIXTURES / "result_grid" / "result_grid.schema"


@pytest.fixture(scope="session")
def demo_session():
    return Session.load()


@pytest.fixture(scope="session")
def grid_session():
    return Session.load(GRID_SCHEMA)


@pytest.fixture(scope="session")
def lexicon(demo_session):
    return demo_session.lexicon


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
