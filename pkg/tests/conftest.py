"""Shared fixtures: the expensive closed-form fits are built once per session."""

import pytest
from hypothesis import HealthCheck, settings

from qsa.fitting import guess_moment

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fits():
    """Verified fit reports for moment orders 1..8, keyed by order.

    Orders 7 and 8 need moment data through n = 758 and dominate the
    session's startup cost; everything downstream shares this dict.
    """
    return {r: guess_moment(r) for r in range(1, 9)}


@pytest.fixture(scope="session")
def fits_small():
    """Fit reports for orders 1..4 only (cheap; for unit-level checks)."""
    return {r: guess_moment(r) for r in range(1, 5)}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid and getattr(rep, "when", "") == "call":
                name = rep.nodeid.split("::")[-1]
                rows.append((name, "PASS" if rep.passed else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(rows):
            terminalreporter.write_line(f"{verdict}  {name}")
