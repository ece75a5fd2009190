import numpy as np
import pytest

from minkowski_soliton import ProfileGrid, SolverConfig, integrate_profile


@pytest.fixture(scope="session")
def profiles_t50():
    """Profiles for n = 1..8 on [0, 50], shared across modules."""
    return {n: integrate_profile(n, SolverConfig(50.0, 1e-3)) for n in range(1, 9)}


def with_fault(grid: ProfileGrid, column: str, index: int, value: float) -> ProfileGrid:
    """Copy of ``grid`` with one entry overwritten."""
    nodes = grid.nodes.copy()
    nodes[index, "t r rp rpp".split().index(column)] = value
    return ProfileGrid.from_nodes(grid.n, nodes)


@pytest.fixture
def faulty():
    return with_fault


# one PASS/FAIL line per acceptance criterion, shown at the end of every run
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    key = report.nodeid.split("::")[-1]
    lines = [ln for ln in report.capstdout.splitlines() if " criterion " in ln]
    if lines:
        ACCEPTANCE_LINES[key] = lines[-1]
    else:
        ACCEPTANCE_LINES[key] = f"FAIL {key}: raised before measuring ({report.outcome})"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split("_")[2])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
