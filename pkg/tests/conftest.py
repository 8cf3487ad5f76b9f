import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from agentheat.kernels import BACKENDS  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    """Each available stencil backend in turn."""
    return BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
