"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from __future__ import annotations

import pytest

_OUTCOMES: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        previous = _OUTCOMES.get(number)
        status = "FAIL" if failed or (previous and previous[0] == "FAIL") else "PASS"
        elapsed = getattr(item, "criterion_seconds", report.duration)
        _OUTCOMES[number] = (status, title, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        status, title, elapsed = _OUTCOMES[number]
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  ({elapsed:.2f} s)")
    passed = sum(1 for s, _, _ in _OUTCOMES.values() if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(_OUTCOMES)} acceptance criteria passed")
