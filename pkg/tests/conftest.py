from __future__ import annotations

import pytest

from matroidlab.core import graphic, uniform, wheel, whirl

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.fixture
def u24():
    return uniform(2, 4)


@pytest.fixture
def k4():
    return graphic(4, K4_EDGES)


@pytest.fixture
def w4():
    return wheel(4)


@pytest.fixture
def whirl3():
    return whirl(3)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        ok, detail = acceptance_log.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
