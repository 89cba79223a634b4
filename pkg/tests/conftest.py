import pytest

from diskpot.polytope import Polytope

# filled by test_acceptance; printed after the run
ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture
def cp2():
    return Polytope([((-1, -1), -1, "0"), ((1, 0), -1, "1"), ((0, 1), -1, "2")])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, secs = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k}. {title} ({secs:.3f} s)")
