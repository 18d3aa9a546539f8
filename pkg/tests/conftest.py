import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eccsim.config import Config  # noqa: E402
from eccsim.linkbudget import LinkBudgetParams  # noqa: E402


@pytest.fixture
def link_defaults():
    return LinkBudgetParams()


@pytest.fixture
def config():
    return Config()


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one acceptance line; the summary prints them after the run."""

    def record(criterion, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        print(ACCEPTANCE_LINES[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
