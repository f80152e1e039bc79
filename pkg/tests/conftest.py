from __future__ import annotations

import _acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = _acceptance_report.lines()
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
