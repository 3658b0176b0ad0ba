import pytest

from cisnim import ForbiddenSet, misere_forbidden, solve

F_EMPTY = ForbiddenSet()
F_110 = ForbiddenSet.of([(1, 1, 0)])
F_PAIR = ForbiddenSet.of([(2, 1, 0), (3, 3, 3)])
F_MISERE = misere_forbidden()


@pytest.fixture(scope="session")
def t_empty():
    return solve(256, F_EMPTY)


@pytest.fixture(scope="session")
def t110():
    return solve(256, F_110)


@pytest.fixture(scope="session")
def t110_large():
    return solve(1100, F_110)


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line for an acceptance criterion, then assert it."""
    def _record(num, name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
