import pytest

from vanishing_torus import construct


@pytest.fixture(scope="session")
def f25():
    """The d = 2, N = 5 eigenfunction on lambda = 3125."""
    return construct(2, 5)


@pytest.fixture(scope="session")
def f25_real():
    return construct(2, 5, mode="real")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
