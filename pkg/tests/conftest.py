"""Shared fixtures plus the acceptance scoreboard.

Acceptance tests record one line per criterion through the `criterion`
fixture; the summary hook prints the scoreboard after the run so the
pass/fail status of every criterion is visible in one place even when a
test fails mid-assertion.
"""

from __future__ import annotations

import pytest

_SCOREBOARD: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record (number, description, passed, detail) for the final summary."""

    def record(number: int, description: str, passed: bool, detail: str = "") -> None:
        _SCOREBOARD.append((number, description, bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _SCOREBOARD:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(_SCOREBOARD):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number} ({description}): {status}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(
            line, green=passed, red=not passed, bold=not passed
        )
