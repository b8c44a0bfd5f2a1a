import csv
import functools
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from trinomials import TrinomialSpec, solve  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@functools.lru_cache(maxsize=None)
def solved(n, a, k=1):
    return solve(TrinomialSpec(n, a, k))


def load_reference_table():
    with open(FIXTURES / "reference_table.csv") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def reference_table():
    return load_reference_table()


# acceptance verdicts, filled by test_acceptance and echoed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
