import pytest

from grover_pst.corpus import corpus
from grover_pst.pst_engine import prepare


@pytest.fixture(scope="session")
def small_graphs():
    """Every connected graph on 2..6 vertices, one per isomorphism class."""
    return corpus(6)


@pytest.fixture(scope="session")
def prepared(small_graphs):
    return [(g, *prepare(g)) for g in small_graphs]


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict for the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        request.config._acceptance_lines.append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
