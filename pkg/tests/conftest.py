import sys

import pytest

from vcmkit.vres import paper_fixture


@pytest.fixture(scope="session")
def fig1():
    return paper_fixture("fig1")


@pytest.fixture(scope="session")
def c34():
    return paper_fixture("counterexample34")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the acceptance pass/fail lines after the run, outside capture."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "CRITERION_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
