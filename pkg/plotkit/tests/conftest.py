from __future__ import annotations

import _plotkit_report


def pytest_terminal_summary(terminalreporter):
    lines = _plotkit_report.lines()
    if not lines:
        return
    terminalreporter.section("plotkit acceptance")
    for line in lines:
        terminalreporter.write_line(line)
