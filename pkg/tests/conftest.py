import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def repo_root():
    return ROOT


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
