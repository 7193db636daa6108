import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title, limit): acceptance criterion with a runtime bound")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _ACCEPTANCE.append((props["criterion"], props["title"], report.outcome, props.get("elapsed", 0.0)))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        number, title = marker.args[:2]
        item.user_properties.append(("criterion", number))
        item.user_properties.append(("title", title))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, elapsed in sorted(_ACCEPTANCE):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {elapsed:7.2f}s  {title}")
