import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).parent
sys.path.insert(0, str(TESTS))

FIXTURES = sorted((TESTS / "fixtures").glob("*.bmp"))


@pytest.fixture(params=FIXTURES, ids=lambda p: p.stem)
def fixture_path(request):
    return request.param


# (criterion, passed, detail) rows filled in by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
