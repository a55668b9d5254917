import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fdcnf.sat import available_backends  # noqa: E402

_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def record():
    """record(criterion, ok, detail) adds a pass/fail line to the summary."""
    def _record(criterion, ok, detail=""):
        line = "criterion %s: %s  %s" % (criterion, "PASS" if ok else "FAIL", detail)
        _LINES.append(line.rstrip())
        print(line)
        return ok
    return _record


@pytest.fixture(params=sorted(available_backends()))
def solver_cls(request):
    return available_backends()[request.param]
