from pathlib import Path

import pytest

from pamo import load_instance, read_map

DATA = Path(__file__).resolve().parent.parent / "data"

# Filled by test_acceptance; one line per criterion.
ACCEPTANCE_LINES: list[str] = []


def load_fixture(name: str):
    grid = read_map(DATA / "instances" / f"{name}.map")
    return load_instance((DATA / "instances" / f"{name}.yaml").read_text(), grid)


@pytest.fixture
def corridor():
    """1x6 corridor: robot x=0, object x=2, goal x=4."""
    return load_fixture("corridor")


@pytest.fixture
def detour():
    """One push on a 4-step route versus a 12-step push-free detour."""
    return load_fixture("detour")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
