import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict for the end-of-run summary."""

    def record(number, description, passed, detail=""):
        _CRITERIA.append((number, description, bool(passed), detail))
        line = f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {description}  {detail}"
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {description}  {detail}")
