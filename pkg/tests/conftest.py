from pathlib import Path

import pytest
from hypothesis import settings

import tourneykit as tk

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def c3():
    return tk.make_tournament(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def paley7():
    return tk.paley_tournament(7)


@pytest.fixture
def ext222():
    return tk.extremal_tournament(tk.ExtremalSpec(2, 2, 2))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): one acceptance criterion")
    config.criteria_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when == "teardown":
        return
    number, title = mark.args
    ok = item.config.criteria_results.get(number, (title, True))[1] and not report.failed
    if report.when == "call" or not ok:
        item.config.criteria_results[number] = (title, ok)


def pytest_terminal_summary(terminalreporter, config):
    results = config.criteria_results
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
