import pytest

from starrees.rees import rees_ring
from starrees.star import StarConfig

WORKED_U = [[1, 0], [1, 1], [1, 2], [1, 3]]


@pytest.fixture
def worked():
    cfg = StarConfig.create(WORKED_U, c=2)
    return cfg, rees_ring(cfg)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
