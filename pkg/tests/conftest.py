from pathlib import Path

import pytest

from valuegrep import default_table

DATA = Path(__file__).parent / "data"

_acceptance: list[tuple[str, str, float]] = []


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        status = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"{status:<6} {name}  ({duration:.2f}s)")
