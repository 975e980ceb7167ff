from __future__ import annotations

import pytest
from hypothesis import settings

from instances import d4_reflection, q8_center, s3_transposition

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def s3h():
    return s3_transposition()


@pytest.fixture
def d4s():
    return d4_reflection()


@pytest.fixture
def q8c():
    return q8_center()


def pytest_terminal_summary(terminalreporter):
    from instances import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
