import numpy as np
import pytest

from entroprover.linform import VarContext

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        _acceptance.append((marker.args[0], rep.passed, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit, passed, name in sorted(_acceptance, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {crit}  ({name})")


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def abc():
    return VarContext("ABC")
