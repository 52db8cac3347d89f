import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
SOURCES = FIXTURES / "sources"
LOGS = FIXTURES / "logs"
GOLDEN = FIXTURES / "golden"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def read_source(name):
    return (SOURCES / name).read_text(encoding="utf-8")


def load_golden(name):
    return json.loads((GOLDEN / name).read_text(encoding="utf-8"))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title = results[number]
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title}")
