import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dworkzeta.ffield import build_extension, build_field  # noqa: E402


@pytest.fixture(scope="session")
def F11():
    return build_field(11)


@pytest.fixture(scope="session")
def F29():
    return build_field(29)


@pytest.fixture(scope="session")
def F31():
    return build_field(31)


@pytest.fixture(scope="session")
def F121(F11):
    return build_extension(F11, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
