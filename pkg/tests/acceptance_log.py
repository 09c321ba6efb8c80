"""Shared record of acceptance outcomes, printed at the end of the session."""

from __future__ import annotations

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
