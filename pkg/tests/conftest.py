import re

import pytest
from hypothesis import settings

from rrbkit.fixtures import (
    diamond_semilattice,
    absorbing_pair_band,
    poset_fixtures,
    rrb_fixtures,
    v_poset,
)

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        outcomes = _results[k]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {verdict} ({len(outcomes)} checks)")


@pytest.fixture(scope="session")
def rrbs3():
    return rrb_fixtures(3)


@pytest.fixture(scope="session")
def posets3():
    return poset_fixtures(3)


@pytest.fixture
def diamond():
    return diamond_semilattice()


@pytest.fixture
def apband():
    return absorbing_pair_band()


@pytest.fixture
def vposet():
    return v_poset()
