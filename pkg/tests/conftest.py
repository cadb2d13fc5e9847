"""Shared test plumbing: the acceptance-criteria summary lines.

Acceptance tests register their verdict here before asserting, so the
terminal summary always ends with one PASS/FAIL line per criterion even
when an assertion trips.
"""
from __future__ import annotations

import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


def record_criterion(number: int, label: str, passed: bool, detail: str = "") -> None:
    _CRITERIA[number] = (label, passed, detail)


@pytest.fixture
def criterion():
    """Recorder handed to acceptance tests; call before asserting."""
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, passed, detail = _CRITERIA[number]
        verdict = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {number}: {verdict}  {label}{suffix}")
