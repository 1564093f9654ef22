from __future__ import annotations

import functools

import pytest

from majorana_xyz.code import build_code
from majorana_xyz.simulator import build_decoder, build_gauge_schedule


@functools.lru_cache(maxsize=None)
def code_for(L: int):
    return build_code(L)


@functools.lru_cache(maxsize=None)
def schedule_for(L: int):
    return build_gauge_schedule(code_for(L))


@functools.lru_cache(maxsize=None)
def decoder_for(L: int):
    return build_decoder(code_for(L))


@pytest.fixture
def code3():
    return code_for(3)


@pytest.fixture
def code4():
    return code_for(4)


@pytest.fixture
def code5():
    return code_for(5)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" :: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
