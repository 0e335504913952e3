from __future__ import annotations

import pytest

_RESULTS: dict[tuple[int, str], bool] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        num, title = marker.args
        _RESULTS[(num, title)] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), passed in sorted(_RESULTS.items()):
        terminalreporter.write_line(
            f"criterion {num} ({title}): {'PASS' if passed else 'FAIL'}"
        )
