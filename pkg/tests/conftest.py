from pathlib import Path

import pytest

from pwpart.model import ElectionInstance, parse_instance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def example6() -> ElectionInstance:
    return parse_instance((FIXTURES / "example6.json").read_text())


@pytest.fixture
def example6_path() -> Path:
    return FIXTURES / "example6.json"


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
