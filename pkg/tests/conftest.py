import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from unithood.counts import DATA_DIR, build_local_index  # noqa: E402


@pytest.fixture
def three_docs():
    return build_local_index([
        ("d1", "E coli food poisoning"),
        ("d2", "E coli outbreak"),
        ("d3", "food poisoning report"),
    ])


@pytest.fixture
def data_dir():
    return DATA_DIR


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance_results", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, msg in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f": {msg}" if msg else ""))
