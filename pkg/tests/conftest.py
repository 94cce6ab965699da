import pytest

from irt_sim import Calibration

_criteria: list[tuple[int, str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, text = marker.args
        _criteria.append((number, text, report.outcome.upper(), report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, outcome, _ in sorted(_criteria):
        terminalreporter.write_line(f"[{outcome:6}] {number:2d}. {text}")
    total = sum(d for *_, d in _criteria)
    terminalreporter.write_line(f"total acceptance time: {total:.3f}s")


@pytest.fixture
def table1():
    return Calibration()
