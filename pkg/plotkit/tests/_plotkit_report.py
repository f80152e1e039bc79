"""Collects plotkit acceptance-check outcomes for the terminal summary."""

from __future__ import annotations

_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str) -> None:
    verdict = "PASS" if passed else "FAIL"
    line = f"[acceptance] {criterion}: {verdict} — {detail}"
    _LINES.append(line)
    print(line)


def lines() -> list[str]:
    return list(_LINES)
