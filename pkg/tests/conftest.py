import numpy as np
import pytest

from pvsizing.scenarios import synthetic_week, toy_day
from pvsizing.series import HourlySeries
from pvsizing.storage import StorageParams


def mw(values):
    return HourlySeries(np.asarray(values, dtype=float), "MW")


def cf(values):
    return HourlySeries(np.asarray(values, dtype=float), "dimensionless")


@pytest.fixture
def toy():
    return toy_day()


@pytest.fixture
def lossless():
    return StorageParams(eta_c=1.0, eta_d=1.0, dod=1.0)


@pytest.fixture(scope="session")
def week():
    return synthetic_week()


# -- acceptance reporting: one line per criterion in the terminal summary ------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        prev = _criteria.get(number)
        if prev is None or prev[1] == "PASS":
            _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] {number}. {title}")
